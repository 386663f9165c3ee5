//! Minus continued fractions `a₁ − 1/(a₂ − 1/(a₃ − …))` of Markov quadratics.
//!
//! A Markov irrationality has a purely periodic expansion whose period uses
//! only the digits 2, 3 and 4. Periods are built combinatorially from the
//! tree (never recovered from floating-point values). From a period we get:
//!
//! * its value, as the attracting fixed point of the period's Möbius map;
//! * its integer period matrix `∏ [[aᵢ, −1], [1, 0]]`, whose trace is `3c`;
//! * the full cycle of states visited by the reduction walk
//!   `z ↦ z − 1` (if `z ≥ 1`) / `z ↦ z/(1 − z)` (otherwise), which is the
//!   cycle of simple forms in the class, together with Galois conjugates.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numeric::Mat2;
use crate::tree_path::{NodeKey, Path, Turn};

pub const DEFAULT_TOL: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 10_000;
/// Agreement required between the float walk and the combinatorial states.
pub const WALK_TOL: f64 = 1e-9;

/// A cyclic word of partial quotients, each in `{2, 3, 4}`.
///
/// Equality and hashing are up to rotation. The digits are kept in the order
/// they were built in (the order shown on the tree); [`Period::canonical`]
/// gives the lexicographically least rotation.
#[derive(Debug, Clone, Eq)]
pub struct Period {
    digits: Vec<u8>,
}

impl Period {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidPeriod("empty period".into()));
        }
        if let Some(d) = digits.iter().find(|d| !(2..=4).contains(*d)) {
            return Err(Error::InvalidPeriod(format!("digit {d} outside 2..=4")));
        }
        Ok(Period { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().map(|&d| d as u64).sum()
    }

    /// Number of states in the reduction cycle, `Σ (aᵢ − 1)`.
    pub fn cycle_length(&self) -> usize {
        self.digits.iter().map(|&d| d as usize - 1).sum()
    }

    /// Digit sum equals three times the length (true of every Markov period).
    pub fn is_balanced(&self) -> bool {
        self.digit_sum() == 3 * self.len() as u64
    }

    pub fn rotated(&self, start: usize) -> Period {
        let n = self.len();
        let start = start % n;
        let mut digits = Vec::with_capacity(n);
        digits.extend_from_slice(&self.digits[start..]);
        digits.extend_from_slice(&self.digits[..start]);
        Period { digits }
    }

    pub fn reversed(&self) -> Period {
        let mut digits = self.digits.clone();
        digits.reverse();
        Period { digits }
    }

    /// Start of the lexicographically least rotation, in linear time.
    fn least_rotation_start(&self) -> usize {
        let d = &self.digits;
        let n = d.len();
        let (mut i, mut j, mut k) = (0, 1, 0);
        while i < n && j < n && k < n {
            let (a, b) = (d[(i + k) % n], d[(j + k) % n]);
            if a == b {
                k += 1;
                continue;
            }
            if a > b {
                i += k + 1;
            } else {
                j += k + 1;
            }
            if i == j {
                j += 1;
            }
            k = 0;
        }
        i.min(j)
    }

    pub fn canonical(&self) -> Period {
        self.rotated(self.least_rotation_start())
    }

    pub fn is_rotation_of(&self, other: &Period) -> bool {
        self.len() == other.len() && self.canonical().digits == other.canonical().digits
    }

    /// Run-length notation, e.g. `2,3_3,4` for `(2,3,3,3,4)`.
    pub fn to_run_length(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.digits.len() {
            let d = self.digits[i];
            let mut j = i;
            while j < self.digits.len() && self.digits[j] == d {
                j += 1;
            }
            if j - i > 1 {
                parts.push(format!("{d}_{}", j - i));
            } else {
                parts.push(d.to_string());
            }
            i = j;
        }
        parts.join(",")
    }
}

impl PartialEq for Period {
    fn eq(&self, other: &Self) -> bool {
        self.is_rotation_of(other)
    }
}

impl Hash for Period {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().digits.hash(state);
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Period {
    type Err = Error;

    /// Accepts comma-separated digits with optional run-length sugar
    /// (`2,3_5,4`) and optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut digits = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            let bad = || Error::InvalidPeriod(format!("bad token {tok:?} in {s:?}"));
            let (d, reps) = match tok.split_once('_') {
                Some((d, r)) => (d, r.parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let d: u8 = d.parse().map_err(|_| bad())?;
            if reps == 0 {
                return Err(bad());
            }
            digits.extend(std::iter::repeat_n(d, reps));
        }
        Period::new(digits)
    }
}

/// `(a₁,…,a_r) ⊙ (b₁,…,b_s) = (a₁,…,a_r,b₁,…,b_s)`, not canonicalised.
pub fn conjunction(left: &Period, right: &Period) -> Period {
    let mut digits = Vec::with_capacity(left.len() + right.len());
    digits.extend_from_slice(&left.digits);
    digits.extend_from_slice(&right.digits);
    Period { digits }
}

/// `(2, 3, …, 3, 4)` with `threes` copies of 3: the leftmost branch.
pub fn leftmost_branch_period(threes: usize) -> Period {
    let mut digits = vec![2u8];
    digits.extend(std::iter::repeat_n(3, threes));
    digits.push(4);
    Period { digits }
}

pub fn left_tip_period() -> Period {
    Period { digits: vec![3] }
}

pub fn right_tip_period() -> Period {
    Period { digits: vec![2, 4] }
}

/// Period of a vertex, following the tree from the root.
///
/// Every vertex off the leftmost branch is the conjunction of its right
/// Farey neighbour with its left one; on the leftmost branch (root included)
/// level `n` carries `(2, 3ₙ, 4)`.
pub fn period_of_node(key: &NodeKey) -> Period {
    match key {
        NodeKey::Tip(Turn::L) => left_tip_period(),
        NodeKey::Tip(Turn::R) => right_tip_period(),
        NodeKey::Path(path) => period_of_path(path),
    }
}

fn period_of_path(path: &Path) -> Period {
    let mut left = left_tip_period();
    let mut right = right_tip_period();
    let mut current = leftmost_branch_period(1);
    let mut all_left = true;
    for (i, &turn) in path.turns().iter().enumerate() {
        match turn {
            Turn::L => right = current,
            Turn::R => left = current,
        }
        all_left &= turn == Turn::L;
        current = if all_left {
            leftmost_branch_period(i + 2)
        } else {
            conjunction(&right, &left)
        };
    }
    current
}

/// Applies the period's Möbius map once: `x ↦ a₁ − 1/(a₂ − … − 1/(a_n − 1/x))`.
fn sweep(digits: &[u8], x: f64) -> f64 {
    digits.iter().rev().fold(x, |x, &a| a as f64 - 1.0 / x)
}

/// Value of the purely periodic expansion `(ā₁,…,a_n)`, always `> 1`.
///
/// Iterates the period's Möbius map from `x₀ = 2` until two successive
/// sweeps differ by less than `tol` (or by a few ulps, whichever is larger).
pub fn eval_periodic(digits: &[u8], tol: f64) -> Result<f64> {
    if digits.is_empty() {
        return Err(Error::InvalidPeriod("empty period".into()));
    }
    let mut x = 2.0;
    let mut step = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let next = sweep(digits, x);
        step = (next - x).abs();
        x = next;
        if step < tol || step <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_SWEEPS,
        last_step: step,
    })
}

/// Values of every rotation: entry `i` is the periodic value starting at digit `i`.
pub fn periodic_tails(digits: &[u8], tol: f64) -> Result<Vec<f64>> {
    let n = digits.len();
    let mut tails = vec![0.0; n];
    tails[0] = eval_periodic(digits, tol)?;
    // the backward recursion t_i = a_i - 1/t_{i+1} contracts, so two passes settle it
    for _ in 0..2 {
        let mut next = tails[0];
        for i in (0..n).rev() {
            next = digits[i] as f64 - 1.0 / next;
            tails[i] = next;
        }
    }
    Ok(tails)
}

/// `∏ [[aᵢ, −1], [1, 0]]`; determinant 1.
pub fn period_matrix(p: &Period) -> Mat2<BigInt> {
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    p.digits.iter().fold(
        Mat2([[one.clone(), zero.clone()], [zero.clone(), one.clone()]]),
        |acc, &a| {
            acc.mul(&Mat2([
                [BigInt::from(a), BigInt::from(-1)],
                [one.clone(), zero.clone()],
            ]))
        },
    )
}

/// One point `w⁽ⁱ⁾ = (a₀, ā₁,…,a_n)` of the reduction cycle.
///
/// The tail is the rotation of the period starting at `rotation_start`; its
/// last digit `a_n` is the digit being consumed, and `1 ≤ a₀ ≤ a_n − 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleState {
    pub a0: u8,
    pub rotation_start: usize,
    pub value: f64,
    pub conj_value: f64,
}

impl CycleState {
    /// The rotation `(a₁,…,a_n)` as digits.
    pub fn tail(&self, p: &Period) -> Vec<u8> {
        p.rotated(self.rotation_start).digits
    }

    /// The first `count` partial quotients of `w⁽ⁱ⁾`: `a₀, a₁, a₂, …`.
    pub fn partial_quotients(&self, p: &Period, count: usize) -> Vec<u8> {
        let n = p.len();
        std::iter::once(self.a0)
            .chain((0..).map(|k| p.digits[(self.rotation_start + k) % n]))
            .take(count)
            .collect()
    }

    /// The first `count` partial quotients of `−w̃⁽ⁱ⁾ = (a_n − a₀, ā_{n−1},…,a₁,a_n)`.
    pub fn conj_partial_quotients(&self, p: &Period, count: usize) -> Vec<u8> {
        let n = p.len();
        let last = (self.rotation_start + n - 1) % n;
        std::iter::once(p.digits[last] - self.a0)
            .chain((1..).map(|k| p.digits[(last + n * k - k) % n]))
            .take(count)
            .collect()
    }
}

/// Enumerates the cycle `w⁽¹⁾,…,w⁽ˡ⁾` in walk order, starting at `w − 1`.
///
/// Conjugates come from the reversed-word formula
/// `w̃⁽ⁱ⁾ = −(a_n − a₀, ā_{n−1},…,a₁,a_n)`. Every transition is re-checked
/// against one float step of the reduction walk, on both the states and their
/// conjugates, and the walk must close after exactly `Σ(aᵢ − 1)` steps.
pub fn cycle_states(p: &Period, tol: f64) -> Result<Vec<CycleState>> {
    let d = &p.digits;
    let n = d.len();
    let forward = periodic_tails(d, tol)?;
    let reversed_digits: Vec<u8> = d.iter().rev().copied().collect();
    let backward = periodic_tails(&reversed_digits, tol)?;

    let mut states = Vec::with_capacity(p.cycle_length());
    for i in 0..n {
        let current = d[i];
        let start = (i + 1) % n;
        let tail = forward[start];
        // periodic value of (d[i-1], d[i-2], ..., d[i]) sits at reversed index n - i
        let rev_tail = backward[(n - i) % n];
        for a0 in (1..current).rev() {
            states.push(CycleState {
                a0,
                rotation_start: start,
                value: a0 as f64 - 1.0 / tail,
                conj_value: -((current - a0) as f64 - 1.0 / rev_tail),
            });
        }
    }
    check_walk(&states, forward[0])?;
    Ok(states)
}

fn walk_step(z: f64, subtract: bool) -> f64 {
    if subtract {
        z - 1.0
    } else {
        z / (1.0 - z)
    }
}

fn check_walk(states: &[CycleState], w: f64) -> Result<()> {
    let len = states.len();
    if (states[0].value - (w - 1.0)).abs() > WALK_TOL {
        return Err(Error::CycleMismatch {
            step: 0,
            detail: format!("w - 1 = {} but first state is {}", w - 1.0, states[0].value),
        });
    }
    for (i, s) in states.iter().enumerate() {
        let next = &states[(i + 1) % len];
        let subtract = s.value >= 1.0;
        let v = walk_step(s.value, subtract);
        let c = walk_step(s.conj_value, subtract);
        if (v - next.value).abs() > WALK_TOL || (c - next.conj_value).abs() > WALK_TOL {
            return Err(Error::CycleMismatch {
                step: i + 1,
                detail: format!(
                    "walk gives ({v}, {c}), expected ({}, {})",
                    next.value, next.conj_value
                ),
            });
        }
    }
    Ok(())
}
