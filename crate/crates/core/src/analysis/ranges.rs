//! Ranges of the kernel's real and imaginary parts, and the coincidence lemma.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::report::{Check, Report};
use crate::continued_fractions::{cycle_states, DEFAULT_TOL};
use crate::error::Result;
use crate::markov_tree::MarkovTree;
use crate::numeric::GOLDEN_INV;

/// `(g, g′)` at `(x, y, θ)`, with `g + i g′ = i z̄ / ((z̄ − x)(z̄ − y))` for `z = e^{iθ}`.
pub fn g_and_g_prime(x: f64, y: f64, theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let d = ((c - x).powi(2) + s * s) * ((c - y).powi(2) + s * s);
    let g = -s * (1.0 - x * y) / d;
    let gp = (-x - y + c * (1.0 + x * y)) / d;
    (g, gp)
}

/// A stated interval and what a grid actually reached.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledRange {
    pub name: &'static str,
    pub stated: (f64, f64),
    pub sampled: (f64, f64),
    /// Half a unit in the last printed digit of each endpoint.
    pub rounding: (f64, f64),
}

impl SampledRange {
    pub fn inside(&self) -> bool {
        self.sampled.0 >= self.stated.0 - self.rounding.0 && self.sampled.1 <= self.stated.1 + self.rounding.1
    }

    /// Largest relative gap between a sampled extreme and its stated endpoint.
    pub fn endpoint_gap(&self) -> f64 {
        let lo = (self.sampled.0 - self.stated.0).abs() / self.stated.0.abs();
        let hi = (self.sampled.1 - self.stated.1).abs() / self.stated.1.abs();
        lo.max(hi)
    }
}

#[derive(Debug, Clone)]
pub struct RangeReport {
    pub grid: usize,
    pub ranges: Vec<SampledRange>,
}

impl RangeReport {
    pub fn passed(&self) -> bool {
        self.ranges.iter().all(|r| r.inside() && r.endpoint_gap() <= 0.02)
    }

    pub fn to_report(&self) -> Report {
        let mut rep = Report::default();
        for r in &self.ranges {
            rep.push(Check::flag(
                format!("{} inside stated range", r.name),
                r.inside(),
                format!("sampled [{:.6}, {:.6}] vs [{}, {}]", r.sampled.0, r.sampled.1, r.stated.0, r.stated.1),
            ));
            rep.push(Check::upper(
                format!("{} extrema near endpoints", r.name),
                r.endpoint_gap(),
                0.02,
                format!("grid {}^3", self.grid),
            ));
        }
        rep
    }
}

fn half_unit(decimals: i32) -> f64 {
    0.5 * 10f64.powi(-decimals)
}

fn sample_box(lo: f64, hi: f64, grid: usize) -> ((f64, f64), (f64, f64)) {
    let at = |i: usize, a: f64, b: f64| a + (b - a) * i as f64 / (grid - 1) as f64;
    let mut g = (f64::INFINITY, f64::NEG_INFINITY);
    let mut gp = g;
    for i in 0..grid {
        let x = at(i, lo, hi);
        for j in 0..grid {
            let y = at(j, lo, hi);
            for k in 0..grid {
                let (a, b) = g_and_g_prime(x, y, at(k, PI / 3.0, 2.0 * PI / 3.0));
                g = (g.0.min(a), g.1.max(a));
                gp = (gp.0.min(b), gp.1.max(b));
            }
        }
    }
    (g, gp)
}

/// Samples `g`, `g′` on a `grid³` lattice over the state box `[3/8, 29/12]²`
/// and the conjugate box `[−21/8, −2/5]²`, with `θ ∈ [π/3, 2π/3]`.
pub fn gg_prime_ranges(grid: usize) -> RangeReport {
    let grid = grid.max(2);
    let (vg, vgp) = sample_box(3.0 / 8.0, 29.0 / 12.0, grid);
    let (cg, cgp) = sample_box(-21.0 / 8.0, -2.0 / 5.0, grid);
    let r = |name, stated: (f64, f64), dec: (i32, i32), sampled| SampledRange {
        name,
        stated,
        sampled,
        rounding: (half_unit(dec.0), half_unit(dec.1)),
    };
    RangeReport {
        grid,
        ranges: vec![
            r("g on states", (-1.26964, 0.354112), (5, 6), vg),
            r("g' on states", (-1.10636, -0.07222), (5, 5), vgp),
            r("g on conjugates", (-1.25946, 0.354112), (5, 6), cg),
            r("g' on conjugates", (0.04705, 1.10636), (5, 5), cgp),
        ],
    }
}

/// `b(r) = 10 φ^{−2(r−1)}`.
pub fn coincidence_envelope(r: u32) -> f64 {
    10.0 * GOLDEN_INV.powi(2 * (r as i32 - 1))
}

#[derive(Debug, Clone, Default)]
pub struct CoincidenceReport {
    pub pairs: usize,
    /// Largest `|u − v| / b(r)` seen.
    pub max_ratio: f64,
    pub max_shared: usize,
    pub violations: Vec<String>,
    /// Largest relative gap between `Σ_{k≥k₀} b(k)` and `10 φ^{−(2k₀−3)}` for `k₀ ≤ 20`.
    pub tail_sum_gap: f64,
}

impl CoincidenceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.tail_sum_gap <= 1e-12
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::default();
        r.push(Check::upper(
            "coincidence lemma",
            self.max_ratio,
            1.0,
            format!("{} pairs, up to {} shared quotients", self.pairs, self.max_shared),
        ));
        r.push(Check::upper("envelope tail sum", self.tail_sum_gap, 1e-12, "relative gap, k0 = 1..20"));
        r
    }
}

const PREFIX: usize = 48;

fn shared_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Checks `|u − v| ≤ b(r)` for cycle states sharing their first `r` partial
/// quotients: `samples` random pairs plus every pair adjacent in
/// lexicographic order of the expansions (which maximises `r`).
pub fn coincidence_bound(tree: &MarkovTree, samples: usize, seed: u64) -> Result<CoincidenceReport> {
    let mut points: Vec<(Vec<u8>, f64)> = Vec::new();
    for node in tree.nodes() {
        for s in cycle_states(&node.period, DEFAULT_TOL)? {
            points.push((s.partial_quotients(&node.period, PREFIX), s.value));
        }
    }
    let mut out = CoincidenceReport::default();
    let test = |a: &(Vec<u8>, f64), b: &(Vec<u8>, f64), out: &mut CoincidenceReport| {
        let r = shared_prefix(&a.0, &b.0);
        if r == 0 {
            return;
        }
        let bound = coincidence_envelope(r as u32);
        let gap = (a.1 - b.1).abs();
        out.pairs += 1;
        out.max_shared = out.max_shared.max(r);
        out.max_ratio = out.max_ratio.max(gap / bound);
        if gap > bound {
            out.violations.push(format!("r = {r}: |{} − {}| > {bound:e}", a.1, b.1));
        }
    };
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let i = rng.gen_range(0..points.len());
        let j = rng.gen_range(0..points.len());
        test(&points[i], &points[j], &mut out);
    }
    points.sort_by(|a, b| a.0.cmp(&b.0));
    points.dedup_by(|a, b| a.0 == b.0);
    for w in points.windows(2) {
        test(&w[0], &w[1], &mut out);
    }
    for k0 in 1..=20u32 {
        let sum: f64 = (k0..k0 + 400).map(coincidence_envelope).sum();
        let closed = 10.0 * GOLDEN_INV.powi(2 * k0 as i32 - 3);
        out.tail_sum_gap = out.tail_sum_gap.max((sum - closed).abs() / closed);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_vanishes_on_hyperbola() {
        let (g, _) = g_and_g_prime(1.0, 1.0, PI / 2.0);
        assert_eq!(g, 0.0);
        let (g, _) = g_and_g_prime(2.0, 0.5, 1.3);
        assert!(g.abs() < 1e-15);
    }

    #[test]
    fn g_matches_complex_kernel() {
        use num_complex::Complex64;
        let (x, y, t) = (0.7, 2.1, 1.4);
        let z = Complex64::from_polar(1.0, -t);
        let k = Complex64::i() * z * ((z - x).inv() - (z - y).inv()) / (x - y);
        let (g, gp) = g_and_g_prime(x, y, t);
        assert!((k.re - g).abs() < 1e-14 && (k.im - gp).abs() < 1e-14);
    }

    #[test]
    fn envelope_values() {
        assert_eq!(coincidence_envelope(1), 10.0);
        assert!((coincidence_envelope(3) - 1.4589803375).abs() < 1e-9);
        assert!((10.0 * GOLDEN_INV.powi(21) - 4.08e-4).abs() < 1e-6);
    }

    #[test]
    fn small_grid_ranges() {
        let r = gg_prime_ranges(40);
        for s in &r.ranges {
            assert!(s.inside(), "{s:?}");
        }
    }

    #[test]
    fn coincidence_on_small_tree() {
        let tree = MarkovTree::build(6).unwrap();
        let r = coincidence_bound(&tree, 2000, 7).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.max_shared > 10);
    }
}
