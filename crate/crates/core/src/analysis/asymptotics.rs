//! Growth of denominators and Markov numbers in their natural order.
//!
//! With `q_n` the `n`-th Farey denominator and `c_n` the `n`-th Markov number
//! (both sorted increasingly, with multiplicity), `q_n/√n → π√(2/3)` and
//! `log(c_n)·√C/√n → 1`. Neither statement carries an error term, so the
//! report only tracks how the means over dyadic windows `[2^k, 2^{k+1})`
//! approach their limits.

use num_bigint::BigUint;

use super::report::{Check, Report};
use super::theorem2::q_growth;
use crate::cycle_integral::log_epsilon;
use crate::markov_tree::{farey_denominators_up_to, markov_numbers_up_to};
use crate::numeric::ln_big;

/// Zagier's constant in `#{c ≤ x} ~ C log²(3x)`.
pub const ZAGIER_C: f64 = 0.18071704711507;

/// Default cut-off for the denominators.
pub const ASYMPTOTIC_Q_LIMIT: u64 = 600;
/// Default cut-off for the Markov numbers, as a power of ten.
pub const ASYMPTOTIC_LOG10_C_LIMIT: u32 = 120;

#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    /// Window is `start ≤ n < end`, 1-based.
    pub start: usize,
    pub end: usize,
    pub mean: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: &'static str,
    pub target: f64,
    pub windows: Vec<Window>,
}

impl Series {
    fn new(name: &'static str, target: f64, len: usize, term: impl Fn(usize) -> f64) -> Self {
        let mut windows = Vec::new();
        let mut start = 1;
        while 2 * start <= len + 1 {
            let end = 2 * start;
            let mean = (start..end).map(&term).sum::<f64>() / (end - start) as f64;
            windows.push(Window {
                start,
                end,
                mean,
                distance: (mean - target).abs(),
            });
            start = end;
        }
        Series { name, target, windows }
    }

    /// Distance to the limit never grows from one window to the next.
    pub fn monotone(&self) -> bool {
        self.windows.windows(2).all(|w| w[1].distance <= w[0].distance)
    }

    pub fn last(&self) -> Option<&Window> {
        self.windows.last()
    }
}

#[derive(Debug, Clone)]
pub struct AsymptoticsReport {
    pub max_q: u64,
    pub max_log10_c: u32,
    pub fraction_count: usize,
    pub markov_count: usize,
    /// `q_n/√n`, target `π√(2/3)`.
    pub q_series: Series,
    /// `log(c_n)·√C/√n`, target 1.
    pub c_series: Series,
    /// `log(ε_n)·√C/√n`, target 1.
    pub eps_series: Series,
    /// Window means of `log c_n` over window means of `q_n`, target `√3/(π√(2C))`.
    pub c_over_q: Vec<(usize, f64)>,
}

impl AsymptoticsReport {
    pub fn c_over_q_target() -> f64 {
        3f64.sqrt() / (std::f64::consts::PI * (2.0 * ZAGIER_C).sqrt())
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::default();
        for s in [&self.q_series, &self.c_series, &self.eps_series] {
            if let Some(w) = s.last() {
                r.push(Check::info(
                    s.name,
                    w.mean,
                    s.target,
                    format!("window [{}, {}), monotone approach: {}", w.start, w.end, s.monotone()),
                ));
            }
        }
        if let Some(&(start, v)) = self.c_over_q.last() {
            r.push(Check::info(
                "log c_n / q_n",
                v,
                Self::c_over_q_target(),
                format!("window from {start}"),
            ));
        }
        r
    }
}

/// Tabulates the growth statistics for all denominators `≤ max_q` and all
/// Markov numbers `≤ 10^max_log10_c`.
pub fn asymptotics_report(max_q: u64, max_log10_c: u32) -> AsymptoticsReport {
    let mut qs = farey_denominators_up_to(max_q);
    qs.sort_unstable();
    let mut cs = markov_numbers_up_to(&BigUint::from(10u32).pow(max_log10_c));
    cs.sort_unstable();
    let log_c: Vec<f64> = cs.iter().map(ln_big).collect();
    let log_eps: Vec<f64> = cs.iter().map(log_epsilon).collect();
    let sqrt_c = ZAGIER_C.sqrt();

    let q_series = Series::new("q_n / sqrt(n)", q_growth(), qs.len(), |n| qs[n - 1] as f64 / (n as f64).sqrt());
    let c_series = Series::new("log(c_n) sqrt(C) / sqrt(n)", 1.0, cs.len(), |n| {
        log_c[n - 1] * sqrt_c / (n as f64).sqrt()
    });
    let eps_series = Series::new("log(eps_n) sqrt(C) / sqrt(n)", 1.0, cs.len(), |n| {
        log_eps[n - 1] * sqrt_c / (n as f64).sqrt()
    });
    let windows = q_series.windows.len().min(c_series.windows.len());
    let c_over_q = (0..windows)
        .map(|i| {
            let w = &q_series.windows[i];
            let lc = (w.start..w.end).map(|n| log_c[n - 1]).sum::<f64>();
            let q = (w.start..w.end).map(|n| qs[n - 1] as f64).sum::<f64>();
            (w.start, lc / q)
        })
        .collect();
    AsymptoticsReport {
        max_q,
        max_log10_c,
        fraction_count: qs.len(),
        markov_count: cs.len(),
        q_series,
        c_series,
        eps_series,
        c_over_q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert!((q_growth() - 2.565099).abs() < 1e-6);
        assert!((1.0 / ZAGIER_C.sqrt() - 2.3523418721).abs() < 1e-9);
    }

    #[test]
    fn denominator_order_head() {
        let mut qs = farey_denominators_up_to(7);
        qs.sort_unstable();
        assert_eq!(&qs[..8], &[1, 2, 3, 4, 5, 5, 6, 7]);
    }

    #[test]
    fn small_report_shapes() {
        let r = asymptotics_report(120, 40);
        assert!(r.fraction_count > 2000);
        assert!(r.q_series.windows.len() >= 10);
        assert!(r.q_series.monotone());
        assert!(r.c_series.monotone());
        let last = r.c_series.last().unwrap();
        // second-order term −log 3·√C/√n, averaged over the window
        let expected = 1.0 - 3f64.ln() * ZAGIER_C.sqrt() / ((last.start + last.end) as f64 / 2.0).sqrt();
        assert!((last.mean - expected).abs() < 0.02, "{} vs {expected}", last.mean);
    }
}
