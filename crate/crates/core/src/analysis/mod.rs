//! Empirical checks over a fully evaluated tree.

mod asymptotics;
mod decomposition;
mod interlacing;
mod ranges;
mod recursion;
mod report;
mod structure;
mod theorem2;

pub use asymptotics::{
    asymptotics_report, AsymptoticsReport, Series, Window, ASYMPTOTIC_LOG10_C_LIMIT, ASYMPTOTIC_Q_LIMIT, ZAGIER_C,
};
pub use decomposition::{decompose_path, PathDecomposition};
pub use interlacing::{check_interlacing, InterlaceMode, InterlaceResult, InterlacingReport, HARD_VIOLATION};
pub use ranges::{
    coincidence_bound, coincidence_envelope, g_and_g_prime, gg_prime_ranges, CoincidenceReport, RangeReport,
    SampledRange,
};
pub use recursion::{
    check_j_recursion, check_q_recursion, delta_bound, lambdas, q_matrix_form, JRecursionReport, QRecursionReport,
    DELTA_IM, DELTA_RE,
};
pub use report::{Check, Report, Status};
pub use structure::{check_structure, StructureReport};
pub use theorem2::{computed_envelope, q_growth, theorem2_constants, BoundChain, DeltaTerms, Envelope};

use crate::cycle_integral::{CycleIntegrator, CycleValue};
use crate::error::{Error, Result};
use crate::markov_tree::MarkovTree;
use crate::tree_path::NodeKey;

/// A tree together with one value per vertex.
#[derive(Debug, Clone)]
pub struct TreeValues {
    pub tree: MarkovTree,
    values: Vec<CycleValue>,
}

impl TreeValues {
    pub fn new(tree: MarkovTree, values: Vec<CycleValue>) -> Result<Self> {
        if values.len() != tree.len() {
            return Err(Error::MissingValue(format!(
                "{} values for {} nodes",
                values.len(),
                tree.len()
            )));
        }
        for (n, v) in tree.nodes().iter().zip(&values) {
            if n.key != v.key {
                return Err(Error::MissingValue(n.key.to_string()));
            }
        }
        Ok(TreeValues { tree, values })
    }

    pub fn compute(depth: u32, integrator: &CycleIntegrator) -> Result<Self> {
        let tree = MarkovTree::build(depth)?;
        let values = integrator.evaluate_tree(&tree)?;
        Ok(TreeValues { tree, values })
    }

    pub fn depth(&self) -> u32 {
        self.tree.depth()
    }

    pub fn values(&self) -> &[CycleValue] {
        &self.values
    }

    pub fn value(&self, key: &NodeKey) -> Result<&CycleValue> {
        self.tree
            .position(key)
            .map(|i| &self.values[i])
            .ok_or_else(|| Error::MissingValue(key.to_string()))
    }

    /// Internal vertices with `lo ≤ level ≤ hi`.
    pub fn internal(&self, lo: u32, hi: u32) -> impl Iterator<Item = &CycleValue> {
        self.values.iter().filter(move |v| {
            let l = v.level();
            l >= lo.max(1) && l <= hi
        })
    }
}
