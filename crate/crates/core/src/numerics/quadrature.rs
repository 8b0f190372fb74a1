//! Adaptive Gauss–Kronrod (7/15) quadrature with interval bisection.
//!
//! Semi-infinite ranges are mapped onto the unit interval with
//! `x = a + t/(1 − t)`; doubly infinite ranges are split at the origin.

// Tabulated nodes and weights are kept at their published precision.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Default relative tolerance for special-function integrals.
pub const SPECIAL_REL_TOL: f64 = 1e-12;
/// Default relative tolerance for physics-level integrals (QFI, curves).
pub const PHYSICS_REL_TOL: f64 = 1e-7;

const DEFAULT_MAX_SUBDIVISIONS: usize = 4000;

// Kronrod abscissae; odd indices are the embedded 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

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

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of a converged quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Adaptive quadrature settings.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub max_subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

struct RuleOutput {
    value: f64,
    error: f64,
    abs_value: f64,
}

fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<RuleOutput>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    let fc = f(center)?;
    let mut result_gauss = fc * WG[3];
    let mut result_kronrod = fc * WGK[7];
    let mut result_abs = result_kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        result_kronrod += WGK[j] * (f1 + f2);
        result_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            result_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = result_kronrod * 0.5;
    let mut result_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        result_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = result_kronrod * half;
    let result_abs = result_abs * abs_half;
    let result_asc = result_asc * abs_half;
    let mut error = ((result_kronrod - result_gauss) * half).abs();
    if result_asc != 0.0 && error != 0.0 {
        error = result_asc * (200.0 * error / result_asc).powf(1.5).min(1.0);
    }
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * result_abs);
    }

    Ok(RuleOutput {
        value,
        error,
        abs_value: result_abs,
    })
}

impl Quadrature {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_floor: 0.0,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }

    pub fn with_abs_floor(mut self, abs_floor: f64) -> Self {
        self.abs_floor = abs_floor;
        self
    }

    pub fn with_max_subdivisions(mut self, max_subdivisions: usize) -> Self {
        self.max_subdivisions = max_subdivisions;
        self
    }

    /// Integrates `f` over `(a, b)`; either bound may be infinite.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<IntegrationResult>
    where
        F: FnMut(f64) -> f64,
    {
        self.try_integrate(|x| Ok(f(x)), a, b)
    }

    /// Like [`Quadrature::integrate`] for integrands that can fail.
    pub fn try_integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<IntegrationResult>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        self.integrate_dyn(&mut f, a, b)
    }

    fn integrate_dyn(
        &self,
        f: &mut dyn FnMut(f64) -> Result<f64>,
        a: f64,
        b: f64,
    ) -> Result<IntegrationResult> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                value: self.rel_tol,
                reason: "must be positive",
            });
        }
        if a.is_nan() || b.is_nan() || !(a < b) {
            return Err(Error::InvalidParameter {
                name: "b",
                value: b,
                reason: "integration requires a < b",
            });
        }

        match (a.is_finite(), b.is_finite()) {
            (true, true) => self.integrate_finite(f, a, b),
            (true, false) => {
                // x = a + t/(1 − t), dx = dt/(1 − t)²
                let mut g = |t: f64| -> Result<f64> {
                    let s = 1.0 - t;
                    let x = a + t / s;
                    Ok(f(x)? / (s * s))
                };
                self.integrate_finite(&mut g, 0.0, 1.0)
            }
            (false, true) => {
                let mut g = |t: f64| -> Result<f64> {
                    let s = 1.0 - t;
                    let x = b - t / s;
                    Ok(f(x)? / (s * s))
                };
                self.integrate_finite(&mut g, 0.0, 1.0)
            }
            (false, false) => {
                let left = self.integrate_dyn(f, f64::NEG_INFINITY, 0.0)?;
                let right = self.integrate_dyn(f, 0.0, f64::INFINITY)?;
                Ok(IntegrationResult {
                    value: left.value + right.value,
                    abs_error_estimate: left.abs_error_estimate + right.abs_error_estimate,
                    evaluations: left.evaluations + right.evaluations,
                })
            }
        }
    }

    fn integrate_finite<F>(&self, f: &mut F, a: f64, b: f64) -> Result<IntegrationResult>
    where
        F: FnMut(f64) -> Result<f64> + ?Sized,
    {
        let mut evaluations = 0usize;
        let mut checked = |x: f64| -> Result<f64> {
            evaluations += 1;
            let y = f(x)?;
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::NonFinite(format!("integrand at x = {x}")))
            }
        };

        let first = gauss_kronrod(&mut checked, a, b)?;
        let mut total = first.value;
        let mut total_error = first.error;
        let mut total_abs = first.abs_value;
        let mut heap = BinaryHeap::new();
        heap.push(Segment {
            a,
            b,
            value: first.value,
            error: first.error,
        });

        let mut subdivisions = 0;
        loop {
            let tolerance = (self.rel_tol * total.abs()).max(self.abs_floor);
            if total_error <= tolerance || total_error <= 50.0 * f64::EPSILON * total_abs {
                break;
            }
            if subdivisions >= self.max_subdivisions {
                return Err(Error::Quadrature {
                    value: total,
                    abs_error: total_error,
                    evaluations,
                });
            }
            let worst = heap.pop().expect("segment heap is never empty");
            let mid = 0.5 * (worst.a + worst.b);
            if !(worst.a < mid && mid < worst.b) {
                // Interval exhausted at machine precision.
                return Err(Error::Quadrature {
                    value: total,
                    abs_error: total_error,
                    evaluations,
                });
            }
            let left = gauss_kronrod(&mut checked, worst.a, mid)?;
            let right = gauss_kronrod(&mut checked, mid, worst.b)?;
            total += left.value + right.value - worst.value;
            total_error += left.error + right.error - worst.error;
            total_abs += left.abs_value + right.abs_value;
            heap.push(Segment {
                a: worst.a,
                b: mid,
                value: left.value,
                error: left.error,
            });
            heap.push(Segment {
                a: mid,
                b: worst.b,
                value: right.value,
                error: right.error,
            });
            subdivisions += 1;
        }

        // Re-sum to shed the drift of incremental updates.
        let value: f64 = heap.iter().map(|s| s.value).sum();
        let error: f64 = heap.iter().map(|s| s.error).sum();
        Ok(IntegrationResult {
            value,
            abs_error_estimate: error.max(0.0),
            evaluations,
        })
    }
}

/// Integrates `f` over `(a, b)` to relative tolerance `rel_tol`.
///
/// `b` may be `+∞` (and `a` may be `−∞`).
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<IntegrationResult>
where
    F: FnMut(f64) -> f64,
{
    Quadrature::new(rel_tol).integrate(f, a, b)
}
