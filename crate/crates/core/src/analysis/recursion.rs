//! The additive recursions for `q` and `J` along a path.
//!
//! Level by level, `q_n = q_{n−1} + q_{r_m − 1}` exactly and
//! `J(w_n) = J(w_{n−1}) + J(w_{r_m − 1}) + δ_n` with a small error `δ_n`.
//! Unrolling run by run gives the matrix form
//!
//! `(x_n, x_{r_m−1}) = A_m B_m ⋯ B_2 (x_0, x_0')`
//!
//! with `A_m = [[n − r_m + 1, 1], [1, 0]]`, `B_i = [[r_i − r_{i−1}, 1], [1, 0]]`,
//! `x_0` the base tip and `x_0'` the other tip. `λ_j` is the top-left entry
//! of `A_m B_m ⋯ B_{j+1}`, i.e. the weight the unrolled sum gives the run that
//! ends just before level `r_j`.

use num_complex::Complex64;

use super::decomposition::{decompose_path, PathDecomposition};
use super::report::{Check, Report};
use super::TreeValues;
use crate::error::{Error, Result};
use crate::markov_tree::MarkovTree;
use crate::numeric::{Mat2, GOLDEN_INV};
use crate::tree_path::NodeKey;

/// Constant in the bound on `|Re δ|`.
pub const DELTA_RE: f64 = 115181.57371;
/// Constant in the bound on `|Im δ|`.
pub const DELTA_IM: f64 = 100853.23866;

/// `constant · φ^{−2(n−1)}`.
pub fn delta_bound(constant: f64, level: u32) -> f64 {
    constant * GOLDEN_INV.powi(2 * (level as i32 - 1))
}

fn step(a: u128) -> Mat2<u128> {
    Mat2([[a, 1], [1, 0]])
}

/// `A_m B_m ⋯ B_{from}` for `from ≥ 2`; just `A_m` when `from > m`.
fn product_from(d: &PathDecomposition, from: usize) -> Mat2<u128> {
    let r = &d.turn_levels;
    let m = r.len();
    let mut out = step((d.level - d.last_turn() + 1) as u128);
    for i in (from..=m).rev() {
        // turn_levels is 0-indexed: r_i = r[i − 1]
        out = out.mul(&step((r[i - 1] - r[i - 2]) as u128));
    }
    out
}

/// `λ_j` for `j = 2..=m`.
pub fn lambdas(d: &PathDecomposition) -> Vec<u128> {
    (2..=d.m()).map(|j| product_from(d, j + 1).0[0][0]).collect()
}

/// `(q_n, q_{r_m − 1})` from the matrix form.
pub fn q_matrix_form(d: &PathDecomposition, q_base: u64, q_other: u64) -> [u128; 2] {
    product_from(d, 2).apply(&[q_base as u128, q_other as u128])
}

#[derive(Debug, Clone, Default)]
pub struct QRecursionReport {
    pub nodes_checked: usize,
    pub mismatches: Vec<String>,
}

impl QRecursionReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::default();
        r.push(Check::flag(
            "q recursion",
            self.passed(),
            format!("{} nodes, {} mismatches", self.nodes_checked, self.mismatches.len()),
        ));
        r
    }
}

fn q_of(tree: &MarkovTree, key: &NodeKey) -> Result<u64> {
    tree.get(key).map(|n| n.q()).ok_or_else(|| Error::MissingValue(key.to_string()))
}

/// Exact integer check of the `q` recursion, its matrix form and `q_n ≥ λ_j q_{r_{j−1}}`.
pub fn check_q_recursion(tree: &MarkovTree) -> Result<QRecursionReport> {
    let mut out = QRecursionReport::default();
    for node in tree.nodes() {
        let Some(path) = node.key.path() else { continue };
        let d = decompose_path(path);
        let q = node.q();
        let q_imm = q_of(tree, &d.immediate)?;
        let q_turn = q_of(tree, &d.turn_predecessor)?;
        out.nodes_checked += 1;
        if q != q_imm + q_turn {
            out.mismatches.push(format!("{}: {q} != {q_imm} + {q_turn}", node.key));
        }
        let (nb_l, nb_r) = tree.neighbours(&node.key).expect("internal node");
        let mut want = [nb_l.key.clone(), nb_r.key.clone()];
        let mut got = [d.immediate.clone(), d.turn_predecessor.clone()];
        want.sort();
        got.sort();
        if want != got {
            out.mismatches.push(format!("{}: predecessors {got:?} != Farey neighbours {want:?}", node.key));
        }
        let mat = q_matrix_form(&d, q_of(tree, &d.base)?, q_of(tree, &d.other_base)?);
        if mat != [q as u128, q_turn as u128] {
            out.mismatches.push(format!("{}: matrix form gives {mat:?}", node.key));
        }
        for (idx, lambda) in lambdas(&d).into_iter().enumerate() {
            let j = idx + 2;
            let lvl = d.turn_levels[j - 2];
            let q_r = q_of(tree, &d.ancestor(lvl))? as u128;
            if (q as u128) < lambda * q_r {
                out.mismatches.push(format!("{}: q_n < λ_{j} q_(r_{}) = {lambda}·{q_r}", node.key, j - 1));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct JRecursionReport {
    pub nodes_checked: usize,
    /// Largest `|Re δ| / bound` and `|Im δ| / bound` over checked nodes.
    pub max_ratio_re: f64,
    pub max_ratio_im: f64,
    pub violations: Vec<String>,
    /// Largest relative residual of the unrolled identity.
    pub max_identity_residual: f64,
}

impl JRecursionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::default();
        r.push(Check::upper("delta bound (real)", self.max_ratio_re, 1.0, "max |Re δ| / bound"));
        r.push(Check::upper("delta bound (imag)", self.max_ratio_im, 1.0, "max |Im δ| / bound"));
        r.push(Check::flag(
            "delta bound violations",
            self.violations.is_empty(),
            format!("{} nodes", self.nodes_checked),
        ));
        r.push(Check::upper(
            "unrolled J identity",
            self.max_identity_residual,
            1e-9,
            "relative residual",
        ));
        r
    }
}

fn delta(tv: &TreeValues, d: &PathDecomposition) -> Result<Complex64> {
    Ok(tv.value(&d.key)?.big_j - tv.value(&d.immediate)?.big_j - tv.value(&d.turn_predecessor)?.big_j)
}

/// `δ_w = J(w) − J(u) − J(v)` against the two bounds, for `2 ≤ n ≤ max_level`,
/// with `slack` added to each bound. Also re-assembles every `J(w_n)` from
/// the tips and the `δ_i` along its path.
pub fn check_j_recursion(tv: &TreeValues, max_level: u32, slack: f64) -> Result<JRecursionReport> {
    let mut out = JRecursionReport::default();
    for node in tv.tree.nodes() {
        let Some(path) = node.key.path() else { continue };
        let n = node.level;
        if n < 2 || n > max_level {
            continue;
        }
        let d = decompose_path(path);
        let dl = delta(tv, &d)?;
        let (b_re, b_im) = (delta_bound(DELTA_RE, n), delta_bound(DELTA_IM, n));
        out.nodes_checked += 1;
        out.max_ratio_re = out.max_ratio_re.max(dl.re.abs() / b_re);
        out.max_ratio_im = out.max_ratio_im.max(dl.im.abs() / b_im);
        if dl.re.abs() > b_re + slack || dl.im.abs() > b_im + slack {
            out.violations.push(format!("{} (n = {n}): δ = {dl}", node.key));
        }
        let residual = identity_residual(tv, &d)?;
        out.max_identity_residual = out.max_identity_residual.max(residual);
    }
    Ok(out)
}

/// Relative residual of `J(w_n) = [A_m⋯B_2 (J(w_0), J(w_0'))]₀ + Σ coef_i δ_i`.
fn identity_residual(tv: &TreeValues, d: &PathDecomposition) -> Result<f64> {
    let mat = product_from(d, 2);
    let j0 = tv.value(&d.base)?.big_j;
    let j0p = tv.value(&d.other_base)?.big_j;
    let mut total = j0 * mat.0[0][0] as f64 + j0p * mat.0[0][1] as f64;
    let r = &d.turn_levels;
    let m = r.len();
    let lam = lambdas(d);
    for lvl in 1..=d.level {
        // run t holds levels r_t ..= r_{t+1} − 1; the last run runs to n
        let t = r.iter().rposition(|&x| x <= lvl).expect("r_1 = 1") + 1;
        let coef = if t == m { 1.0 } else { lam[t - 1] as f64 };
        let key = d.ancestor(lvl);
        let dk = if lvl == d.level { d.clone() } else { decompose_path(key.path().expect("internal")) };
        total += delta(tv, &dk)? * coef;
    }
    let target = tv.value(&d.key)?.big_j;
    Ok((total - target).norm() / target.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> PathDecomposition {
        decompose_path(&s.parse().unwrap())
    }

    #[test]
    fn matrix_form_examples() {
        // 2/7 on path LR: q = 7, predecessor 1/3
        assert_eq!(q_matrix_form(&dec("LR"), 1, 2), [7, 3]);
        // 3/8 on path RL, turn predecessor 1/3
        assert_eq!(q_matrix_form(&dec("RL"), 2, 1), [8, 3]);
        // leftmost branch: q_n = n + 2
        for n in 1..10 {
            let path = "L".repeat(n - 1);
            assert_eq!(q_matrix_form(&dec(&path), 1, 2)[0], n as u128 + 2);
        }
    }

    #[test]
    fn lambda_of_last_run() {
        let d = dec("LRRLL");
        // r = (1, 2, 4), n = 6: λ_3 = n − r_3 + 1 = 3
        let lam = lambdas(&d);
        assert_eq!(lam.len(), 2);
        assert_eq!(lam[1], 3);
        // λ_2 = (A_3 B_3)[0][0] = 3·(4 − 2) + 1
        assert_eq!(lam[0], 7);
    }

    #[test]
    fn q_recursion_holds_to_depth_eight() {
        let tree = MarkovTree::build(8).unwrap();
        let r = check_q_recursion(&tree).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.nodes_checked, 255);
    }

    #[test]
    fn bound_at_level_two() {
        assert!((delta_bound(DELTA_RE, 2) - 115181.57371 * GOLDEN_INV.powi(2)).abs() < 1e-9);
        assert!((delta_bound(DELTA_RE, 2) - 43995.5).abs() < 1.0);
        assert!((delta_bound(DELTA_RE, 9) - 52.1).abs() < 0.5);
    }
}
