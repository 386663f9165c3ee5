//! Addresses of vertices in the Markov–Hurwitz tree.
//!
//! Internal vertices are addressed by the word of left/right turns taken from
//! the root `(2,3,4)`; the empty word is the root. The two boundary tips are
//! the limits of the all-left and all-right branches and are written `L*` and
//! `R*`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Turn {
    L,
    R,
}

impl Turn {
    pub fn opposite(self) -> Turn {
        match self {
            Turn::L => Turn::R,
            Turn::R => Turn::L,
        }
    }

    fn as_char(self) -> char {
        match self {
            Turn::L => 'L',
            Turn::R => 'R',
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<Turn>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn turns(&self) -> &[Turn] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// Level of the vertex; the root sits on level 1.
    pub fn level(&self) -> u32 {
        self.0.len() as u32 + 1
    }

    pub fn child(&self, turn: Turn) -> Path {
        let mut turns = self.0.clone();
        turns.push(turn);
        Path(turns)
    }

    pub fn parent(&self) -> Option<Path> {
        if self.0.is_empty() {
            None
        } else {
            Some(Path(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    /// Prefix of length `level - 1`, i.e. the ancestor on `level`.
    pub fn ancestor_at_level(&self, level: u32) -> Path {
        assert!(level >= 1 && level <= self.level());
        Path(self.0[..level as usize - 1].to_vec())
    }

    /// True on the leftmost branch (the root included).
    pub fn is_all_left(&self) -> bool {
        self.0.iter().all(|&t| t == Turn::L)
    }

    pub fn is_all_right(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&t| t == Turn::R)
    }
}

impl From<Vec<Turn>> for Path {
    fn from(turns: Vec<Turn>) -> Self {
        Path(turns)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{}", t.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'L' | 'l' => Ok(Turn::L),
                'R' | 'r' => Ok(Turn::R),
                _ => Err(Error::InvalidPath(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Path)
    }
}

/// Key of a vertex: one of the two tips or an internal path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKey {
    /// `(3̄) ↔ 0/1 ↔ (1,1,1)` for `Turn::L`, `(2,4̄) ↔ 1/2 ↔ (1,1,2)` for `Turn::R`.
    Tip(Turn),
    Path(Path),
}

impl NodeKey {
    pub fn root() -> Self {
        NodeKey::Path(Path::root())
    }

    /// Tips are level 0.
    pub fn level(&self) -> u32 {
        match self {
            NodeKey::Tip(_) => 0,
            NodeKey::Path(p) => p.level(),
        }
    }

    pub fn path(&self) -> Option<&Path> {
        match self {
            NodeKey::Tip(_) => None,
            NodeKey::Path(p) => Some(p),
        }
    }
}

impl From<Path> for NodeKey {
    fn from(p: Path) -> Self {
        NodeKey::Path(p)
    }
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKey::Tip(Turn::L) => f.write_str("L*"),
            NodeKey::Tip(Turn::R) => f.write_str("R*"),
            NodeKey::Path(p) if p.is_root() => f.write_str("root"),
            NodeKey::Path(p) => p.fmt(f),
        }
    }
}

impl FromStr for NodeKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L*" | "l*" => Ok(NodeKey::Tip(Turn::L)),
            "R*" | "r*" => Ok(NodeKey::Tip(Turn::R)),
            "root" => Ok(NodeKey::root()),
            _ => s.parse().map(NodeKey::Path),
        }
    }
}

impl Serialize for NodeKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NodeKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
