//! Quadrature, ladder-series summation and special functions.

pub mod ladder;
pub mod quadrature;
pub mod special;

pub use ladder::{sum_ladder, sum_ladder_multi, LadderSum};
pub use quadrature::{
    integrate_adaptive, IntegrationResult, Quadrature, PHYSICS_REL_TOL, SPECIAL_REL_TOL,
};
pub use special::{erf, f1, f2, g_aux};

/// ln(sinh(x)) for x > 0 without overflow.
pub fn ln_sinh(x: f64) -> f64 {
    if x < 20.0 {
        x.sinh().ln()
    } else {
        x - std::f64::consts::LN_2 + (-(-2.0 * x).exp()).ln_1p()
    }
}

/// Numerically stable ln(Σ e^{a_i}); `−∞` for an empty slice.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_sinh_branches_agree() {
        for x in [0.1f64, 1.0, 19.9, 20.1, 50.0] {
            let direct = x.sinh().ln();
            assert!((ln_sinh(x) - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
        assert!(ln_sinh(1000.0).is_finite());
    }

    #[test]
    fn log_sum_exp_basics() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert!((log_sum_exp(&[0.0, 0.0]) - 2f64.ln()).abs() < 1e-15);
        assert!((log_sum_exp(&[1000.0, 1000.0]) - (1000.0 + 2f64.ln())).abs() < 1e-12);
    }
}
