//! The chain of constants bounding `J(w_n)/√n` and `j(w_n)` for large `n`.
//!
//! With `k₀` fixed, `δ/q_n` is bounded by four geometric tails (the `λ_k`
//! block, the `λ_j` blocks, the last `δ_n`, and the pure-branch case). Adding
//! that to an envelope of `J/q` over levels `≤ k₀` bounds `J/q_n`; multiplying
//! by `q_n/√n → π√(2/3)` bounds `J/√n`, and `2 log ε_n ~ 2√n/√C` turns it into
//! a bound on `j`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::asymptotics::ZAGIER_C;
use super::recursion::{DELTA_IM, DELTA_RE};
use super::report::{Check, Report};
use crate::cycle_integral::CycleValue;
use crate::error::{Error, Result};
use crate::numeric::GOLDEN_INV;

/// Bounds on `Re(J/q)` and `Im(J/q)` over the computed levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Envelope {
    /// The envelope reported for levels `≤ 12`.
    pub const PUBLISHED: Envelope = Envelope {
        re_min: 1251.36168,
        re_max: 1359.5674,
        im_min: -0.4813,
        im_max: 0.0,
    };
}

/// Min/max of `J/q` over all values on levels `≤ max_level`, tips included.
pub fn computed_envelope(values: &[CycleValue], max_level: u32) -> Option<Envelope> {
    let mut it = values.iter().filter(|v| v.level() <= max_level).map(|v| v.j_over_q());
    let first = it.next()?;
    let init = Envelope {
        re_min: first.re,
        re_max: first.re,
        im_min: first.im,
        im_max: first.im,
    };
    Some(it.fold(init, |e, z| Envelope {
        re_min: e.re_min.min(z.re),
        re_max: e.re_max.max(z.re),
        im_min: e.im_min.min(z.im),
        im_max: e.im_max.max(z.im),
    }))
}

/// The four tail bounds on `|δ|/q_n` for one of the two constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaTerms {
    /// `(c/4) φ^{−(2k₀−3)}`
    pub lambda_k: f64,
    /// `(c/k₀) φ^{−(2k₀−1)}`
    pub lambda_j: f64,
    /// `(c/(k₀+1)) φ^{−2k₀}`
    pub last: f64,
    /// `(c/(k₀+3)) φ^{−(2k₀−5)}`, the case `m = 1`.
    pub pure_branch: f64,
}

impl DeltaTerms {
    pub fn new(constant: f64, k0: u32) -> Self {
        let k = k0 as f64;
        let p = |e: i32| GOLDEN_INV.powi(e);
        let k0 = k0 as i32;
        DeltaTerms {
            lambda_k: constant / 4.0 * p(2 * k0 - 3),
            lambda_j: constant / k * p(2 * k0 - 1),
            last: constant / (k + 1.0) * p(2 * k0),
            pure_branch: constant / (k + 3.0) * p(2 * k0 - 5),
        }
    }

    /// The worse of the two cases `m ≥ 2` and `m = 1`.
    pub fn aggregate(&self) -> f64 {
        (self.lambda_k + self.lambda_j + self.last).max(self.pure_branch)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundChain {
    pub k0: u32,
    pub envelope: Envelope,
    pub re_terms: DeltaTerms,
    pub im_terms: DeltaTerms,
    /// Bounds on `|Re δ|/q_n` and `|Im δ|/q_n`.
    pub delta_re: f64,
    pub delta_im: f64,
    /// `Re(J)/√n` and `Im(J)/√n` intervals.
    pub big_j_re: (f64, f64),
    pub big_j_im: (f64, f64),
    /// `Re(j)` and `Im(j)` intervals.
    pub j_re: (f64, f64),
    pub j_im: (f64, f64),
}

/// `π√(2/3)`, the limit of `q_n/√n`.
pub fn q_growth() -> f64 {
    PI * (2.0f64 / 3.0).sqrt()
}

pub fn theorem2_constants(k0: u32, envelope: Envelope) -> Result<BoundChain> {
    if k0 < 2 {
        return Err(Error::Config(format!("k0 must be at least 2, got {k0}")));
    }
    let re_terms = DeltaTerms::new(DELTA_RE, k0);
    let im_terms = DeltaTerms::new(DELTA_IM, k0);
    let (dr, di) = (re_terms.aggregate(), im_terms.aggregate());
    let s = q_growth();
    let big_j_re = ((envelope.re_min - dr) * s, (envelope.re_max + dr) * s);
    let big_j_im = ((envelope.im_min - di) * s, (envelope.im_max + di) * s);
    let to_j = ZAGIER_C.sqrt() / 2.0;
    Ok(BoundChain {
        k0,
        envelope,
        re_terms,
        im_terms,
        delta_re: dr,
        delta_im: di,
        big_j_re,
        big_j_im,
        j_re: (big_j_re.0 * to_j, big_j_re.1 * to_j),
        j_im: (big_j_im.0 * to_j, big_j_im.1 * to_j),
    })
}

impl BoundChain {
    /// `(name, value)` for every link of the chain, in order.
    pub fn constants(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("|Re delta|/q", self.delta_re),
            ("|Im delta|/q", self.delta_im),
            ("Re J/sqrt(n) lower", self.big_j_re.0),
            ("Re J/sqrt(n) upper", self.big_j_re.1),
            ("Im J/sqrt(n) lower", self.big_j_im.0),
            ("Im J/sqrt(n) upper", self.big_j_im.1),
            ("Re j lower", self.j_re.0),
            ("Re j upper", self.j_re.1),
            ("Im j lower", self.j_im.0),
            ("Im j upper", self.j_im.1),
        ]
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::default();
        for (name, v) in self.constants() {
            r.push(Check::info(name, v, v, format!("k0 = {}", self.k0)));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_chain_at_twelve() {
        let c = theorem2_constants(12, Envelope::PUBLISHED).unwrap();
        let want = [
            1.41173, 1.23611, 3206.24623, 3491.04708, -4.40533, 3.170734, 681.50081, 742.03641, -0.93637, 0.67396,
        ];
        for ((name, got), w) in c.constants().into_iter().zip(want) {
            assert!((got - w).abs() < 1e-3, "{name}: {got} vs {w}");
        }
    }

    #[test]
    fn aggregate_is_sum_of_parts() {
        let t = DeltaTerms::new(DELTA_RE, 12);
        assert_eq!(t.aggregate(), t.lambda_k + t.lambda_j + t.last);
        // for small k0 the pure-branch tail can dominate
        let t = DeltaTerms::new(DELTA_RE, 2);
        assert_eq!(t.aggregate(), t.pure_branch.max(t.lambda_k + t.lambda_j + t.last));
    }

    #[test]
    fn rejects_small_k0() {
        assert!(theorem2_constants(1, Envelope::PUBLISHED).is_err());
    }

    #[test]
    fn chain_tightens_with_k0() {
        let a = theorem2_constants(12, Envelope::PUBLISHED).unwrap();
        let b = theorem2_constants(16, Envelope::PUBLISHED).unwrap();
        assert!(b.delta_re < a.delta_re && b.j_re.1 < a.j_re.1 && b.j_re.0 > a.j_re.0);
    }
}
