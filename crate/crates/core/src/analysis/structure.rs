use num_bigint::BigInt;
use num_traits::Zero;

use super::report::{Check, Report};
use crate::continued_fractions::period_matrix;
use crate::markov_tree::MarkovTree;

/// Exact integer identities that every vertex satisfies.
#[derive(Debug, Clone, Default)]
pub struct StructureReport {
    pub nodes_checked: usize,
    pub failures: Vec<String>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::default();
        r.push(Check::flag(
            "exact structure",
            self.passed(),
            format!("{} nodes, {} failures", self.nodes_checked, self.failures.len()),
        ));
        r
    }
}

/// Markov equation, `len(period) = q`, digit sum `3q`, `tr M = 3c` and `c | k² + 1`.
pub fn check_structure(tree: &MarkovTree) -> StructureReport {
    let mut out = StructureReport::default();
    for node in tree.nodes() {
        out.nodes_checked += 1;
        let key = &node.key;
        let q = node.q();
        let c = BigInt::from(node.c().clone());
        if !node.triple.satisfies_markov_equation() {
            out.failures.push(format!("{key}: Markov equation"));
        }
        if node.period.len() as u64 != q {
            out.failures.push(format!("{key}: period length {} != q = {q}", node.period.len()));
        }
        if node.period.digit_sum() != 3 * q {
            out.failures.push(format!("{key}: digit sum {} != 3q", node.period.digit_sum()));
        }
        let tr = period_matrix(&node.period).trace();
        if tr != &c * 3 {
            out.failures.push(format!("{key}: trace {tr} != 3c"));
        }
        let k = BigInt::from(node.k.clone());
        let rem: BigInt = (&k * &k + 1u32) % &c;
        if !rem.is_zero() {
            out.failures.push(format!("{key}: c does not divide k^2 + 1"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_on_small_tree() {
        let r = check_structure(&MarkovTree::build(6).unwrap());
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.nodes_checked, 65);
    }
}
