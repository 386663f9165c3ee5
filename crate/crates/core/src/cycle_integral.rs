//! Cycle integrals `J(w) = (2 log ε) j(w)` along Markov geodesics.
//!
//! The closed geodesic is traded for the arc `{e^{iθ} : π/3 ≤ θ ≤ 2π/3}`:
//!
//! `J(w) = ∫ j(e^{iθ}) · i e^{iθ} · Σᵢ (1/(e^{iθ} − w⁽ⁱ⁾) − 1/(e^{iθ} − w̃⁽ⁱ⁾)) dθ`
//!
//! where `w⁽ⁱ⁾` runs over the reduction cycle and `w̃⁽ⁱ⁾` are the conjugates.
//! All kernel poles are real, so the integrand is analytic on a neighbourhood
//! of the arc and the adaptive rule converges quickly.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::continued_fractions::{cycle_states, CycleState, Period, DEFAULT_TOL};
use crate::error::Result;
use crate::markov_tree::{MarkovTree, TreeNode};
use crate::modular_j::{JSeries, DEFAULT_ORDER};
use crate::numeric::{ln_big, ratio_f64};
use crate::quadrature::{integrate, QuadOptions};
use crate::tree_path::NodeKey;

pub const ARC_START: f64 = PI / 3.0;
pub const ARC_END: f64 = 2.0 * PI / 3.0;

/// `log((3c + √(9c² − 4))/2)`, stable for Markov numbers of any size.
pub fn log_epsilon(c: &BigUint) -> f64 {
    let three_c = c * 3u32;
    let inv = ratio_f64(&BigUint::from(1u32), &three_c);
    let x = 4.0 * inv * inv;
    // log((1 + √(1 − x))/2) = log1p(−(1 − √(1 − x))/2), with 1 − √(1 − x) = x/(1 + √(1 − x))
    let s = (1.0 - x).sqrt();
    ln_big(&three_c) + (-(x / (1.0 + s)) / 2.0).ln_1p()
}

/// `Σ 1/(e^{iθ} − w⁽ⁱ⁾) − 1/(e^{iθ} − w̃⁽ⁱ⁾)`.
pub fn kernel_sum(states: &[CycleState], theta: f64) -> Complex64 {
    let z = Complex64::from_polar(1.0, theta);
    states
        .iter()
        .map(|s| (z - s.value).inv() - (z - s.conj_value).inv())
        .sum()
}

/// Which way round the period is read when building the cycle.
///
/// `Reversed` is the default and reproduces the published reference table;
/// `Literal` follows the period exactly as the tree produces it and gives the
/// complex conjugate of the same numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Reversed,
    Literal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleValue {
    pub key: NodeKey,
    pub p: u64,
    pub q: u64,
    pub c: BigUint,
    /// `J(w)`, the unnormalised integral.
    pub big_j: Complex64,
    /// `j(w) = J / (2 log ε)`.
    pub j: Complex64,
    pub log_eps: f64,
    pub quad_err: f64,
}

impl CycleValue {
    pub fn j_over_q(&self) -> Complex64 {
        self.big_j / self.q as f64
    }

    pub fn level(&self) -> u32 {
        self.key.level()
    }
}

#[derive(Debug, Clone)]
pub struct CycleIntegrator {
    series: JSeries,
    pub quad: QuadOptions,
    pub orientation: Orientation,
    pub cf_tol: f64,
}

impl Default for CycleIntegrator {
    fn default() -> Self {
        CycleIntegrator::new(JSeries::new(DEFAULT_ORDER))
    }
}

impl CycleIntegrator {
    pub fn new(series: JSeries) -> Self {
        CycleIntegrator {
            series,
            quad: QuadOptions::default(),
            orientation: Orientation::default(),
            cf_tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(mut self, abs_tol: f64) -> Self {
        self.quad.abs_tol = abs_tol;
        self
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn series(&self) -> &JSeries {
        &self.series
    }

    pub fn states(&self, period: &Period) -> Result<Vec<CycleState>> {
        match self.orientation {
            Orientation::Reversed => cycle_states(&period.reversed(), self.cf_tol),
            Orientation::Literal => cycle_states(period, self.cf_tol),
        }
    }

    /// `J` and its error estimate for a bare period.
    pub fn integrate_period(&self, period: &Period) -> Result<(Complex64, f64)> {
        let states = self.states(period)?;
        let series = &self.series;
        let integrand = |theta: f64| {
            let z = Complex64::from_polar(1.0, theta);
            series.eval_unchecked(z) * Complex64::i() * z * kernel_sum(&states, theta)
        };
        let r = integrate(integrand, ARC_START, ARC_END, self.quad)?;
        Ok((r.value, r.error))
    }

    pub fn integrate(&self, node: &TreeNode) -> Result<CycleValue> {
        let (big_j, quad_err) = self.integrate_period(&node.period)?;
        let log_eps = log_epsilon(node.c());
        Ok(CycleValue {
            key: node.key.clone(),
            p: node.farey.p,
            q: node.farey.q,
            c: node.c().clone(),
            big_j,
            j: big_j / (2.0 * log_eps),
            log_eps,
            quad_err,
        })
    }

    /// Values for every vertex, in the same order as `tree.nodes()`.
    pub fn evaluate_tree(&self, tree: &MarkovTree) -> Result<Vec<CycleValue>> {
        tree.nodes().par_iter().map(|n| self.integrate(n)).collect()
    }

    pub fn evaluate_nodes(&self, nodes: &[TreeNode]) -> Result<Vec<CycleValue>> {
        nodes.par_iter().map(|n| self.integrate(n)).collect()
    }

    /// `∫_{π/3}^{2π/3} j(e^{iθ}) dθ`.
    pub fn average_integral(&self) -> Result<f64> {
        let opts = QuadOptions {
            abs_tol: 1e-9,
            ..self.quad
        };
        let r = integrate(|t| self.series.on_arc(t), ARC_START, ARC_END, opts)?;
        Ok(r.value.re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov_tree::{locate_fraction, node_at};

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn log_epsilon_examples() {
        let le = |c: u32| log_epsilon(&BigUint::from(c));
        assert!((le(1) - ((3.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-15);
        assert!((le(1) - 0.9624236501).abs() < 1e-10);
        assert!((le(2) - 1.7627471740).abs() < 1e-10);
        assert!((le(5) - 2.7035758309).abs() < 1e-10);
        assert!((le(5) - ((15.0 + 221f64.sqrt()) / 2.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn log_epsilon_for_huge_c() {
        let c = BigUint::from(10u32).pow(150);
        let want = 150.0 * std::f64::consts::LN_10 + 3f64.ln();
        assert!(close(log_epsilon(&c), want, 1e-15));
    }

    #[test]
    fn kernel_sum_golden_state_set() {
        let per: Period = "3".parse().unwrap();
        let states = cycle_states(&per, DEFAULT_TOL).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let z = Complex64::i();
        let direct = (z - phi).inv() + (z - 1.0 / phi).inv() - (z + 1.0 / phi).inv() - (z + phi).inv();
        let got = kernel_sum(&states, PI / 2.0);
        assert!((got - direct).norm() < 1e-14);
        assert!(got.im.abs() < 1e-14);
    }

    #[test]
    fn kernel_sum_triangle_bound() {
        let node = node_at(&"RLR".parse().unwrap()).unwrap();
        let states = cycle_states(&node.period, DEFAULT_TOL).unwrap();
        let bound = 2.0 * states.len() as f64 * (2.0 / 3f64.sqrt()) * (29.0 / 12.0 + 21.0 / 8.0);
        for i in 0..=100 {
            let t = ARC_START + (ARC_END - ARC_START) * i as f64 / 100.0;
            assert!(kernel_sum(&states, t).norm() <= bound);
        }
    }

    #[test]
    fn tip_values() {
        let integ = CycleIntegrator::default();
        let v = integ.integrate(&TreeNode::left_tip()).unwrap();
        assert!(close(v.j_over_q().re, 1359.56741044, 1e-9));
        assert!(close(v.j.re, 706.324813541, 1e-9));
        assert!(v.j.im.abs() < 1e-8);
        let v = integ.integrate(&TreeNode::right_tip()).unwrap();
        assert!(close(v.j_over_q().re, 1251.36168734, 1e-9));
        assert!(close(v.j.re, 709.892890920, 1e-9));
    }

    #[test]
    fn value_at_one_fourteenth() {
        let integ = CycleIntegrator::default();
        let v = integ.integrate(&locate_fraction(1, 14, 12).unwrap()).unwrap();
        assert!(close(v.j_over_q().re, 1341.67984291, 1e-9));
        assert!(close(v.j_over_q().im, -0.122490502636, 1e-7));
        assert!(close(v.j.re, 706.858789119, 1e-9));
        assert!(close(v.j.im, -0.0645336432753, 1e-7));
        assert!((v.j - v.big_j / (2.0 * v.log_eps)).norm() < 1e-12);
    }

    #[test]
    fn orientations_are_conjugate() {
        let node = node_at(&"RLLR".parse().unwrap()).unwrap();
        let rev = CycleIntegrator::default().integrate(&node).unwrap();
        let lit = CycleIntegrator::default()
            .with_orientation(Orientation::Literal)
            .integrate(&node)
            .unwrap();
        assert!((rev.big_j - lit.big_j.conj()).norm() < 1e-7);
        assert!(rev.big_j.im.abs() > 1e-3);
    }

    #[test]
    fn rotation_invariance() {
        let integ = CycleIntegrator::default();
        let node = node_at(&"LRL".parse().unwrap()).unwrap();
        let (base, err) = integ.integrate_period(&node.period).unwrap();
        for k in 1..node.period.len() {
            let (rot, _) = integ.integrate_period(&node.period.rotated(k)).unwrap();
            assert!((rot - base).norm() <= 2.0 * err.max(1e-10) + 1e-9 * base.norm());
        }
    }

    #[test]
    fn refinement_is_within_estimate() {
        let node = node_at(&"RRL".parse().unwrap()).unwrap();
        let coarse = CycleIntegrator::default().with_tol(1e-6);
        let fine = CycleIntegrator::default().with_tol(1e-12);
        let (a, ea) = coarse.integrate_period(&node.period).unwrap();
        let (b, _) = fine.integrate_period(&node.period).unwrap();
        assert!((a - b).norm() <= ea.max(1e-9));
    }

    #[test]
    fn arc_average() {
        let avg = CycleIntegrator::default().average_integral().unwrap();
        assert!((avg - 753.982).abs() < 1e-3, "{avg}");
    }
}
