//! Splitting a tree path into runs between turns.
//!
//! For a vertex `w_n` on level `n`, the ancestors are `w_1 = (2,3,4)`, …,
//! `w_{n−1}`, and `w_0` is the tip on the side of the first step. A level
//! `j ∈ [2, n−1]` is a turn when the step into `w_j` and the step out of it go
//! in different directions; `r_1 = 1` always. With `r_m` the last turn,
//! the two Farey neighbours of `w_n` are `w_{n−1}` and `w_{r_m − 1}`.

use crate::tree_path::{NodeKey, Path, Turn};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub key: NodeKey,
    pub level: u32,
    /// `r_1 < r_2 < … < r_m`, with `r_1 = 1`.
    pub turn_levels: Vec<u32>,
    pub immediate: NodeKey,
    pub turn_predecessor: NodeKey,
    /// `w_0`: the tip on the side of the first step.
    pub base: NodeKey,
    /// The other tip, `w_0'`.
    pub other_base: NodeKey,
}

impl PathDecomposition {
    pub fn m(&self) -> usize {
        self.turn_levels.len()
    }

    pub fn last_turn(&self) -> u32 {
        *self.turn_levels.last().expect("r_1 always present")
    }

    /// `w_ℓ` on the path, with `w_0` the base tip.
    pub fn ancestor(&self, level: u32) -> NodeKey {
        match (&self.key, level) {
            (_, 0) => self.base.clone(),
            (NodeKey::Path(p), l) => NodeKey::Path(p.ancestor_at_level(l)),
            (NodeKey::Tip(_), _) => panic!("tips have no ancestors"),
        }
    }
}

fn tip(t: Turn) -> NodeKey {
    NodeKey::Tip(t)
}

/// Turn levels, predecessors and base of an internal vertex.
///
/// The root has no path to decompose: its predecessors are the two tips, with
/// `R*` as immediate and `L*` as turn predecessor.
pub fn decompose_path(path: &Path) -> PathDecomposition {
    let key = NodeKey::Path(path.clone());
    let level = path.level();
    let turns = path.turns();
    if turns.is_empty() {
        return PathDecomposition {
            key,
            level,
            turn_levels: vec![1],
            immediate: tip(Turn::R),
            turn_predecessor: tip(Turn::L),
            base: tip(Turn::L),
            other_base: tip(Turn::R),
        };
    }
    let first = turns[0];
    let mut turn_levels = vec![1];
    // turns[j − 2] enters level j, turns[j − 1] leaves it
    for j in 2..level {
        if turns[j as usize - 2] != turns[j as usize - 1] {
            turn_levels.push(j);
        }
    }
    let mut d = PathDecomposition {
        key,
        level,
        turn_levels,
        immediate: NodeKey::Path(path.parent().expect("non-root")),
        turn_predecessor: tip(first),
        base: tip(first),
        other_base: tip(first.opposite()),
    };
    d.turn_predecessor = d.ancestor(d.last_turn() - 1);
    d
}
