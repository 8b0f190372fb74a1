//! Error function and the Gaussian-weighted hyperbolic/trigonometric ratio
//! integrals entering the high-temperature spin partition function.

use std::f64::consts::{FRAC_2_SQRT_PI, PI};

use super::quadrature::{IntegrationResult, Quadrature, SPECIAL_REL_TOL};
use crate::error::{Error, Result};

/// Below this |y t| (and |x y t|) the ratio is replaced by its Taylor patch.
const SERIES_PATCH: f64 = 1e-4;
/// The Gaussian e^{-t²} is below 1e-31 of its peak beyond this distance.
const GAUSSIAN_REACH: f64 = 8.5;

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// sinh(x u)/sinh(u) together with the Gaussian e^{-t²}, combined in log
/// space so large |u| does not overflow.
fn sinh_ratio_times_gaussian(x: f64, u: f64, t: f64) -> f64 {
    let gauss = (-t * t).exp();
    if u.abs() < SERIES_PATCH && (x * u).abs() < SERIES_PATCH {
        return x * (1.0 + (x * x - 1.0) * u * u / 6.0) * gauss;
    }
    let xu = x * u;
    if xu.abs() < 20.0 && u.abs() < 20.0 {
        return (xu.sinh() / u.sinh()) * gauss;
    }
    // Both sinh arguments carry the sign of u; the ratio is even in u.
    let (au, axu) = (u.abs(), xu.abs());
    let sign = x.signum();
    let log_ratio = axu - au + (-(-2.0 * axu).exp_m1()).ln() - (-(-2.0 * au).exp_m1()).ln();
    sign * (log_ratio - t * t).exp()
}

fn sin_ratio(x: f64, u: f64) -> f64 {
    if u.abs() < SERIES_PATCH && (x * u).abs() < SERIES_PATCH {
        return x * (1.0 - (x * x - 1.0) * u * u / 6.0);
    }
    (x * u).sin() / u.sin()
}

/// F₁(x, y) = ∫_{−∞}^{∞} dt/√π · sinh(x y t)/sinh(y t) · e^{−t²}.
///
/// `y = 0` returns the limit `x`.
pub fn f1(x: f64, y: f64) -> Result<f64> {
    f1_with(x, y, SPECIAL_REL_TOL).map(|r| r.value)
}

pub fn f1_with(x: f64, y: f64, rel_tol: f64) -> Result<IntegrationResult> {
    if !x.is_finite() || !(y >= 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("f1({x}, {y})")));
    }
    if y == 0.0 {
        return Ok(IntegrationResult {
            value: x,
            abs_error_estimate: 0.0,
            evaluations: 1,
        });
    }
    // The integrand is even in t; its envelope e^{(|x|−1) y t − t²} peaks at
    // t = (|x| − 1) y / 2 when |x| > 1.
    let peak = ((x.abs() - 1.0) * y / 2.0).max(0.0);
    let upper = peak + GAUSSIAN_REACH;
    let quad = Quadrature::new(rel_tol);
    let integrand = |t: f64| sinh_ratio_times_gaussian(x, y * t, t);
    let mut total = IntegrationResult {
        value: 0.0,
        abs_error_estimate: 0.0,
        evaluations: 0,
    };
    let mut breakpoints = vec![0.0];
    if peak > 0.0 {
        breakpoints.push(peak);
    }
    breakpoints.push(upper);
    for w in breakpoints.windows(2) {
        let r = quad.integrate(integrand, w[0], w[1])?;
        total.value += r.value;
        total.abs_error_estimate += r.abs_error_estimate;
        total.evaluations += r.evaluations;
    }
    let scale = 2.0 / PI.sqrt();
    total.value *= scale;
    total.abs_error_estimate *= scale;
    if !total.value.is_finite() {
        return Err(Error::NonFinite(format!("f1({x}, {y})")));
    }
    Ok(total)
}

/// F₂(x, y) = ∫_{−π/2y}^{π/2y} dt/√π · sin(x y t)/sin(y t) · e^{−t²}.
///
/// `y = 0` returns the limit `x`.
pub fn f2(x: f64, y: f64) -> Result<f64> {
    f2_with(x, y, SPECIAL_REL_TOL).map(|r| r.value)
}

pub fn f2_with(x: f64, y: f64, rel_tol: f64) -> Result<IntegrationResult> {
    if !x.is_finite() || !(y >= 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("f2({x}, {y})")));
    }
    if y == 0.0 {
        return Ok(IntegrationResult {
            value: x,
            abs_error_estimate: 0.0,
            evaluations: 1,
        });
    }
    let window = PI / (2.0 * y);
    let upper = window.min(GAUSSIAN_REACH);
    // Split into pieces no longer than a half-period of sin(x y t).
    let half_period = PI / (x.abs() * y).max(1e-300);
    let pieces = ((upper / half_period).ceil() as usize).clamp(1, 10_000);
    let quad = Quadrature::new(rel_tol).with_abs_floor(1e-17);
    let integrand = |t: f64| sin_ratio(x, y * t) * (-t * t).exp();
    let mut total = IntegrationResult {
        value: 0.0,
        abs_error_estimate: 0.0,
        evaluations: 0,
    };
    let h = upper / pieces as f64;
    for i in 0..pieces {
        let r = quad.integrate(integrand, i as f64 * h, (i + 1) as f64 * h)?;
        total.value += r.value;
        total.abs_error_estimate += r.abs_error_estimate;
        total.evaluations += r.evaluations;
    }
    let scale = 2.0 / PI.sqrt();
    total.value *= scale;
    total.abs_error_estimate *= scale;
    Ok(total)
}

/// g(x) = (1 + 2x) e^x erf(√x), x ≥ 0.
pub fn g_aux(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("g({x})")));
    }
    Ok((1.0 + 2.0 * x) * x.exp() * erf(x.sqrt()))
}

/// d erf / dx, used by tests and the small-argument asymptotics.
pub fn erf_derivative(x: f64) -> f64 {
    FRAC_2_SQRT_PI * (-x * x).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Taylor series erf(x) = 2/√π Σ (−1)^k x^{2k+1} / (k! (2k+1)).
    fn erf_taylor(x: f64) -> f64 {
        let mut sum = 0.0;
        let mut power = x;
        let mut factorial = 1.0;
        for k in 0..60 {
            if k > 0 {
                factorial *= k as f64;
                power *= -x * x;
            }
            sum += power / (factorial * (2 * k + 1) as f64);
        }
        FRAC_2_SQRT_PI * sum
    }

    #[test]
    fn erf_values() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(1.0) - 0.842_700_792_949_715).abs() < 1e-12);
        assert!((erf(1.0) - erf_taylor(1.0)).abs() < 1e-14);
        assert!((erf(30.0) - 1.0).abs() < 1e-16);
        for x in [0.1, 0.5, 1.3, 2.0, 2.7] {
            assert!((erf(x) - erf_taylor(x)).abs() < 1e-12, "x = {x}");
            assert_eq!(erf(-x), -erf(x));
        }
    }

    #[test]
    fn f1_unit_first_argument() {
        for y in [0.1, 0.5, 1.0, 2.0, 5.0] {
            assert!((f1(1.0, y).unwrap() - 1.0).abs() < 1e-10, "y = {y}");
        }
    }

    #[test]
    fn f1_cosh_identity() {
        let expected = 2.0 * (0.25f64).exp();
        assert!((f1(2.0, 1.0).unwrap() - expected).abs() < 1e-10);
        assert!((expected - 2.568_050_834).abs() < 1e-9);
    }

    #[test]
    fn f1_small_y_limit() {
        assert_eq!(f1(3.0, 0.0).unwrap(), 3.0);
        assert!((f1(3.0, 1e-6).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn f2_unit_first_argument_is_erf_window() {
        for y in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let expected = erf(PI / (2.0 * y));
            assert!((f2(1.0, y).unwrap() - expected).abs() < 1e-10, "y = {y}");
        }
    }

    #[test]
    fn f2_small_y_limit() {
        assert_eq!(f2(2.5, 0.0).unwrap(), 2.5);
        assert!((f2(2.5, 1e-6).unwrap() - 2.5).abs() < 1e-9);
    }

    #[test]
    fn negative_y_rejected() {
        assert!(f1(1.0, -1.0).is_err());
        assert!(f2(1.0, -1.0).is_err());
    }

    #[test]
    fn g_values() {
        assert_eq!(g_aux(0.0).unwrap(), 0.0);
        let expected = 3.0 * std::f64::consts::E * erf(1.0);
        assert!((g_aux(1.0).unwrap() - expected).abs() < 1e-12);
        assert!((g_aux(1.0).unwrap() - 6.872_094_757).abs() < 1e-8);
        let x = 40.0;
        assert!((g_aux(x).unwrap() / ((1.0 + 2.0 * x) * x.exp()) - 1.0).abs() < 1e-15);
        assert!(g_aux(-0.1).is_err());
    }

    #[test]
    fn g_is_monotone() {
        let mut last = g_aux(0.0).unwrap();
        for i in 1..200 {
            let v = g_aux(i as f64 * 0.05).unwrap();
            assert!(v > last);
            last = v;
        }
    }
}
