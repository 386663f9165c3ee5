//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use std::collections::BinaryHeap;
use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights at the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-10,
            max_intervals: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
    pub evaluations: usize,
    /// True when the estimate is limited by rounding rather than by the rule.
    pub roundoff_limited: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    at_floor: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// QUADPACK's rescaling of the raw Kronrod–Gauss difference for one real component.
fn rescale(raw: f64, resabs: f64, resasc: f64) -> (f64, bool) {
    let mut err = raw;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && floor > err {
        (floor, true)
    } else {
        (err, false)
    }
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut fv = [(Complex64::default(), Complex64::default()); 7];
    for (j, x) in XGK.iter().take(7).enumerate() {
        let dx = half * x;
        let pair = (f(center - dx), f(center + dx));
        fv[j] = pair;
        let sum = pair.0 + pair.1;
        kronrod += sum * WGK[j];
        if j % 2 == 1 {
            gauss += sum * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let (mut abs_re, mut abs_im) = (WGK[7] * fc.re.abs(), WGK[7] * fc.im.abs());
    let (mut asc_re, mut asc_im) = (WGK[7] * (fc.re - mean.re).abs(), WGK[7] * (fc.im - mean.im).abs());
    for j in 0..7 {
        let (l, r) = fv[j];
        abs_re += WGK[j] * (l.re.abs() + r.re.abs());
        abs_im += WGK[j] * (l.im.abs() + r.im.abs());
        asc_re += WGK[j] * ((l.re - mean.re).abs() + (r.re - mean.re).abs());
        asc_im += WGK[j] * ((l.im - mean.im).abs() + (r.im - mean.im).abs());
    }
    let h = half.abs();
    let diff = (kronrod - gauss) * half;
    let (err_re, floor_re) = rescale(diff.re.abs(), abs_re * h, asc_re * h);
    let (err_im, floor_im) = rescale(diff.im.abs(), abs_im * h, asc_im * h);
    Panel {
        a,
        b,
        value: kronrod * half,
        error: err_re.hypot(err_im),
        at_floor: (floor_re || err_re == 0.0) && (floor_im || err_im == 0.0),
    }
}

/// `∫_a^b f`, bisecting the panel with the largest error until the total
/// estimate is below `abs_tol` or every panel is at the rounding floor.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    let first = gk15(&f, a, b);
    let mut heap = BinaryHeap::new();
    let mut total_err = first.error;
    let mut floor_count = usize::from(first.at_floor);
    heap.push(first);
    let mut evaluations = 15;
    loop {
        let intervals = heap.len();
        if total_err <= opts.abs_tol || floor_count == intervals {
            let value = heap.iter().map(|p| p.value).sum();
            return Ok(QuadResult {
                value,
                error: total_err,
                intervals,
                evaluations,
                roundoff_limited: total_err > opts.abs_tol,
            });
        }
        if intervals >= opts.max_intervals {
            return Err(Error::Quadrature {
                tol: opts.abs_tol,
                intervals,
                estimate: total_err,
            });
        }
        let worst = heap.pop().expect("nonempty heap");
        if worst.at_floor {
            // the largest error already sits at the floor, so all of them do
            floor_count = intervals;
            heap.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gk15(&f, worst.a, mid);
        let right = gk15(&f, mid, worst.b);
        evaluations += 30;
        total_err += left.error + right.error - worst.error;
        floor_count += usize::from(left.at_floor) + usize::from(right.at_floor);
        heap.push(left);
        heap.push(right);
        // re-sum occasionally to stop drift in the running total
        if heap.len() % 64 == 0 {
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn real(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(real(|x| x.powi(5) - 3.0 * x * x), 0.0, 2.0, QuadOptions::default()).unwrap();
        assert!((r.value.re - (64.0 / 6.0 - 8.0)).abs() < 1e-13);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn oscillatory_complex_exponential() {
        // ∫_0^π e^{10ix} dx = (e^{10iπ} − 1)/(10i) = 0
        let r = integrate(|x| (Complex64::i() * 10.0 * x).exp(), 0.0, PI, QuadOptions::default()).unwrap();
        assert!(r.value.norm() < 1e-12);
        let r = integrate(|x| (Complex64::i() * x).exp(), 0.0, PI / 2.0, QuadOptions::default()).unwrap();
        assert!((r.value - Complex64::new(1.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn peaked_integrand_subdivides() {
        // ∫_{-1}^{1} 1/(x² + 1e-4) dx = 2·100·atan(100)
        let want = 200.0 * 100f64.atan();
        let r = integrate(real(|x| 1.0 / (x * x + 1e-4)), -1.0, 1.0, QuadOptions::default()).unwrap();
        assert!((r.value.re - want).abs() < 1e-9, "{} vs {want}", r.value.re);
        assert!(r.intervals > 1);
    }

    #[test]
    fn large_magnitudes_stop_at_rounding_floor() {
        let opts = QuadOptions {
            abs_tol: 1e-14,
            max_intervals: 500,
        };
        let r = integrate(real(|x| 1e8 * (1.0 + x.sin())), 0.0, 3.0, opts).unwrap();
        let want = 1e8 * (3.0 + 1.0 - 3f64.cos());
        assert!((r.value.re - want).abs() < 1e-6);
        assert!(r.roundoff_limited);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let opts = QuadOptions {
            abs_tol: 1e-12,
            max_intervals: 3,
        };
        let e = integrate(real(|x| x.abs().sqrt()), -1.0, 1.0, opts);
        assert!(matches!(e, Err(Error::Quadrature { .. })));
    }
}
