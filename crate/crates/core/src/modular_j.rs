//! Klein's `j` as a truncated q-expansion.
//!
//! Coefficients are exact: `j = E₄³/Δ` with `Δ = q ∏(1 − qⁿ)²⁴`. The product
//! comes from Euler's pentagonal series raised to the 24th power by squaring.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 40;

/// Lowest admissible `Im z`: the bottom of the fundamental domain, less a hair.
pub const MIN_IM: f64 = 0.866_025_403_784_438_6 - 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct JSeries {
    /// `coeffs[m + 1] = c_m` for `m = −1..=order`.
    coeffs: Vec<BigInt>,
    floats: Vec<f64>,
}

impl JSeries {
    pub fn new(order: usize) -> Self {
        j_coefficients(order)
    }

    fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let floats = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
        JSeries { coeffs, floats }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 2
    }

    /// `c_m` for `m ≥ −1`.
    pub fn coefficient(&self, m: i64) -> &BigInt {
        &self.coeffs[(m + 1) as usize]
    }

    /// `c_{−1}, c_0, …, c_M`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `Σ c_m e^{2πimz}`; rejects `Im z` below the fundamental domain.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must be rejected too
        if !(z.im >= MIN_IM) {
            return Err(Error::BelowStrip { im: z.im });
        }
        Ok(self.eval_unchecked(z))
    }

    /// Same as [`eval`](Self::eval) without the strip check; for hot loops on the arc.
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let q = (Complex64::i() * 2.0 * PI * z).exp();
        // Horner in q over c_0..c_M, then add the polar term
        let mut acc = Complex64::zero();
        for &c in self.floats[1..].iter().rev() {
            acc = acc * q + c;
        }
        acc + q.inv() * self.floats[0]
    }

    /// `j(e^{iθ})`, the integrand on the unit arc.
    pub fn on_arc(&self, theta: f64) -> Complex64 {
        self.eval_unchecked(Complex64::from_polar(1.0, theta))
    }

    pub fn truncation_error(&self, y: f64) -> f64 {
        truncation_error_bound(self.order(), y)
    }

    /// Text format: first line `M`, then `c_{−1}` through `c_M`, one per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.order()).unwrap();
        for c in &self.coeffs {
            writeln!(s, "{c}").unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::CoefficientFile(msg);
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let order: usize = lines
            .next()
            .ok_or_else(|| bad("empty file".into()))?
            .parse()
            .map_err(|e| bad(format!("order line: {e}")))?;
        let coeffs = lines
            .enumerate()
            .map(|(i, l)| l.parse::<BigInt>().map_err(|e| bad(format!("coefficient {}: {e}", i as i64 - 1))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != order + 2 {
            return Err(bad(format!("expected {} coefficients, found {}", order + 2, coeffs.len())));
        }
        if coeffs[0] != BigInt::from(1) || coeffs[1] != BigInt::from(744) {
            return Err(bad("leading coefficients must be 1, 744".into()));
        }
        Ok(JSeries::from_coeffs(coeffs))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_text(&fs::read_to_string(path)?)
    }

    /// Reads the file if it holds at least `order` terms, otherwise computes and writes it.
    pub fn load_or_compute(path: &Path, order: usize) -> Result<Self> {
        if path.exists() {
            let s = Self::load(path)?;
            if s.order() >= order {
                let mut coeffs = s.coeffs;
                coeffs.truncate(order + 2);
                return Ok(JSeries::from_coeffs(coeffs));
            }
        }
        let s = j_coefficients(order);
        s.save(path)?;
        Ok(s)
    }
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `∏_{n≥1} (1 − qⁿ)` to `len` terms via the pentagonal number theorem.
fn euler_product(len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for k in 0i64.. {
        let g1 = (k * (3 * k - 1) / 2) as usize;
        if g1 >= len {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        out[g1] += sign;
        if k > 0 {
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 < len {
                out[g2] += sign;
            }
        }
    }
    out
}

fn sigma(n: u64, power: u32) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(power)).sum()
}

/// `E₄ = 1 + 240 Σ σ₃(n) qⁿ`.
pub fn eisenstein_e4(len: usize) -> Vec<BigInt> {
    (0..len as u64)
        .map(|n| if n == 0 { BigInt::from(1) } else { sigma(n, 3) * 240 })
        .collect()
}

/// Exact `c_{−1}, …, c_M` of `j`.
pub fn j_coefficients(order: usize) -> JSeries {
    let len = order + 2;
    let e4 = eisenstein_e4(len);
    let e4_cubed = mul_trunc(&mul_trunc(&e4, &e4, len), &e4, len);
    let p1 = euler_product(len);
    let p2 = mul_trunc(&p1, &p1, len);
    let p4 = mul_trunc(&p2, &p2, len);
    let p8 = mul_trunc(&p4, &p4, len);
    let p16 = mul_trunc(&p8, &p8, len);
    let p24 = mul_trunc(&p16, &p8, len);
    // q·j = E₄³ / p24, and p24 has constant term 1
    let mut quotient = vec![BigInt::zero(); len];
    for n in 0..len {
        let mut acc = e4_cubed[n].clone();
        for k in 1..=n {
            acc -= &p24[k] * &quotient[n - k];
        }
        quotient[n] = acc;
    }
    JSeries::from_coeffs(quotient)
}

/// Bound on `|Σ_{m>M} c_m e^{2πimz}|` at `Im z = y`, from `c_m ≤ e^{4π√m}`.
///
/// Successive envelope terms have ratio `e^{4π(√(m+1) − √m) − 2πy}`, which
/// decreases in `m`, so the tail is dominated by a geometric series from `M+1`.
/// Returns infinity when that ratio is not below one.
pub fn truncation_error_bound(order: usize, y: f64) -> f64 {
    let f = |m: f64| 4.0 * PI * m.sqrt() - 2.0 * PI * m * y;
    let m = order as f64;
    let ratio = (f(m + 2.0) - f(m + 1.0)).exp();
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    f(m + 1.0).exp() / (1.0 - ratio)
}
