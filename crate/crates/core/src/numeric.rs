//! Float views of big integers and a small 2x2 matrix type.

use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

const MANTISSA_BITS: u64 = 64;

/// `2/(1 + √5)`.
pub const GOLDEN_INV: f64 = 0.618_033_988_749_894_9;

/// Splits `x` into `(m, e)` with `x ≈ m · 2^e` and `m < 2^64`.
pub fn split_f64(x: &BigUint) -> (f64, i64) {
    let bits = x.bits();
    let shift = bits.saturating_sub(MANTISSA_BITS);
    let head = x >> shift;
    (head.to_f64().unwrap_or(0.0), shift as i64)
}

/// Natural logarithm of a positive big integer, accurate to a few ulps for any size.
pub fn ln_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let (m, e) = split_f64(x);
    m.ln() + e as f64 * std::f64::consts::LN_2
}

/// `num / den` as a float, without overflowing for large operands.
pub fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().saturating_sub(MANTISSA_BITS);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Row-major 2x2 matrix over any ring-like element type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

impl<T> Mat2<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                &(&a[0][0] * &b[0][0]) + &(&a[0][1] * &b[1][0]),
                &(&a[0][0] * &b[0][1]) + &(&a[0][1] * &b[1][1]),
            ],
            [
                &(&a[1][0] * &b[0][0]) + &(&a[1][1] * &b[1][0]),
                &(&a[1][0] * &b[0][1]) + &(&a[1][1] * &b[1][1]),
            ],
        ])
    }

    pub fn apply(&self, v: &[T; 2]) -> [T; 2] {
        let a = &self.0;
        [
            &(&a[0][0] * &v[0]) + &(&a[0][1] * &v[1]),
            &(&a[1][0] * &v[0]) + &(&a[1][1] * &v[1]),
        ]
    }

    pub fn trace(&self) -> T {
        &self.0[0][0] + &self.0[1][1]
    }
}
