use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::decomposition::decompose_path;
use super::report::{Check, Report};
use super::TreeValues;
use crate::error::Result;
use crate::tree_path::NodeKey;

/// Violations above this are hard failures; smaller ones are only reported.
pub const HARD_VIOLATION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InterlaceMode {
    /// Real and imaginary parts each lie between those of the predecessors.
    #[default]
    Componentwise,
    /// `j(w_n)` lies on the complex segment joining the predecessors.
    Segment,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterlaceResult {
    pub key: NodeKey,
    pub level: u32,
    /// Distance outside the admissible set; zero when inside.
    pub re_violation: f64,
    pub im_violation: f64,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct InterlacingReport {
    pub mode: InterlaceMode,
    pub tol: f64,
    pub results: Vec<InterlaceResult>,
    /// For each deepest-level vertex, the smallest `n₀` such that every ancestor
    /// on level `≥ n₀` (and ≥ 2) interlaces.
    pub holds_from: BTreeMap<NodeKey, u32>,
}

impl InterlacingReport {
    pub fn violations(&self) -> impl Iterator<Item = &InterlaceResult> {
        self.results.iter().filter(|r| !r.ok)
    }

    pub fn max_violation(&self) -> f64 {
        self.results
            .iter()
            .map(|r| r.re_violation.max(r.im_violation))
            .fold(0.0, f64::max)
    }

    /// Fails only when some violation exceeds the hard threshold.
    pub fn passed(&self) -> bool {
        self.max_violation() <= HARD_VIOLATION
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::default();
        let count = self.violations().count();
        r.push(Check::upper(
            "interlacing",
            self.max_violation(),
            HARD_VIOLATION,
            format!(
                "{:?}, {} nodes, {} beyond tol {:e}",
                self.mode,
                self.results.len(),
                count,
                self.tol
            ),
        ));
        let worst_start = self.holds_from.values().copied().max().unwrap_or(2);
        r.push(Check::info("interlacing holds from level", worst_start as f64, 2.0, "max over branches"));
        r
    }
}

fn outside(x: f64, a: f64, b: f64) -> f64 {
    (a.min(b) - x).max(x - a.max(b)).max(0.0)
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a) * ab.conj()).re / len2;
    (z - (a + ab * t.clamp(0.0, 1.0))).norm()
}

/// Betweenness of `j(w_n)` against `j` at its two predecessors, for `2 ≤ n ≤ max_level`.
pub fn check_interlacing(tv: &TreeValues, max_level: u32, tol: f64, mode: InterlaceMode) -> Result<InterlacingReport> {
    let mut results = Vec::new();
    for node in tv.tree.nodes() {
        let Some(path) = node.key.path() else { continue };
        if node.level < 2 || node.level > max_level {
            continue;
        }
        let d = decompose_path(path);
        let x = tv.value(&d.key)?.j;
        let a = tv.value(&d.immediate)?.j;
        let b = tv.value(&d.turn_predecessor)?.j;
        let (re_violation, im_violation) = match mode {
            InterlaceMode::Componentwise => (outside(x.re, a.re, b.re), outside(x.im, a.im, b.im)),
            InterlaceMode::Segment => (segment_distance(x, a, b), 0.0),
        };
        results.push(InterlaceResult {
            key: node.key.clone(),
            level: node.level,
            re_violation,
            im_violation,
            ok: re_violation <= tol && im_violation <= tol,
        });
    }
    let failing: std::collections::HashSet<&NodeKey> = results.iter().filter(|r| !r.ok).map(|r| &r.key).collect();
    let mut holds_from = BTreeMap::new();
    let bottom = max_level.min(tv.depth());
    for node in tv.tree.level(bottom) {
        let path = node.key.path().expect("internal");
        let mut start = 2;
        for lvl in 2..=bottom {
            if failing.contains(&NodeKey::Path(path.ancestor_at_level(lvl))) {
                start = lvl + 1;
            }
        }
        holds_from.insert(node.key.clone(), start);
    }
    Ok(InterlacingReport {
        mode,
        tol,
        results,
        holds_from,
    })
}
