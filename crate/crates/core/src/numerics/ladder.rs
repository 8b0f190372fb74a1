//! Unit-step series `Σ_{k≥0} term(start + k)` with relative truncation.

use crate::error::{Error, Result};

/// Consecutive sub-tolerance terms required before truncating.
pub const CONSECUTIVE_SMALL_TERMS: usize = 3;
/// Hard cap on the number of terms; reaching it is reported as divergence.
pub const MAX_TERMS: usize = 1_000_000;

/// Several series summed in lockstep over the same ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderSum<const K: usize> {
    pub values: [f64; K],
    pub terms_used: usize,
    /// Geometric estimate of the neglected tail, per component.
    pub truncation_error: [f64; K],
}

/// Sums `K` series term-by-term along `m = start, start + 1, …`.
///
/// Truncates once every component has produced [`CONSECUTIVE_SMALL_TERMS`]
/// consecutive terms with `|term| < rel_tol · Σ|terms|`. Comparing against the
/// absolute sum keeps signed series, whose running sum may cross zero, from
/// stalling.
pub fn sum_ladder_multi<const K: usize, F>(
    mut term: F,
    start: f64,
    rel_tol: f64,
) -> Result<LadderSum<K>>
where
    F: FnMut(f64) -> [f64; K],
{
    if !(rel_tol > 0.0) || !start.is_finite() {
        return Err(Error::InvalidParameter {
            name: "rel_tol",
            value: rel_tol,
            reason: "ladder needs rel_tol > 0 and a finite start",
        });
    }
    let mut sums = [0.0; K];
    let mut abs_sums = [0.0; K];
    let mut last = [0.0f64; K];
    let mut prev = [0.0f64; K];
    let mut small_run = 0usize;

    for k in 0..MAX_TERMS {
        let m = start + k as f64;
        let t = term(m);
        let mut all_small = true;
        for c in 0..K {
            if !t[c].is_finite() {
                return Err(Error::LadderDiverged {
                    start,
                    terms: k + 1,
                    context: format!("non-finite term at m = {m}"),
                });
            }
            sums[c] += t[c];
            abs_sums[c] += t[c].abs();
            prev[c] = last[c];
            last[c] = t[c];
            if t[c].abs() >= rel_tol * abs_sums[c] && t[c] != 0.0 {
                all_small = false;
            }
        }
        // An all-zero prefix (e.g. a vanishing leading coefficient) is not
        // evidence of convergence.
        if abs_sums.iter().all(|&s| s == 0.0) {
            all_small = false;
            if k > 64 {
                all_small = true;
            }
        }
        small_run = if all_small { small_run + 1 } else { 0 };
        if small_run >= CONSECUTIVE_SMALL_TERMS {
            let mut truncation_error = [0.0; K];
            for c in 0..K {
                let ratio = if prev[c] != 0.0 {
                    (last[c] / prev[c]).abs()
                } else {
                    0.0
                };
                truncation_error[c] = if ratio < 1.0 {
                    last[c].abs() * ratio / (1.0 - ratio)
                } else {
                    last[c].abs()
                };
            }
            return Ok(LadderSum {
                values: sums,
                terms_used: k + 1,
                truncation_error,
            });
        }
    }
    Err(Error::LadderDiverged {
        start,
        terms: MAX_TERMS,
        context: "terms failed to decay".into(),
    })
}

/// Scalar ladder sum `Σ_{k≥0} term(start + k)`.
pub fn sum_ladder<F>(mut term: F, start: f64, rel_tol: f64) -> Result<LadderSum<1>>
where
    F: FnMut(f64) -> f64,
{
    sum_ladder_multi(|m| [term(m)], start, rel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_ladder_matches_direct_sum() {
        // Direct summation oracle: 1 + e^{-1} + e^{-4} + e^{-9} + e^{-16} + …
        let oracle: f64 = (0..12).map(|m| (-(m as f64).powi(2)).exp()).sum();
        assert!((oracle - 1.386_318_602_8).abs() < 1e-9);
        let s = sum_ladder(|m| (-m * m).exp(), 0.0, 1e-14).unwrap();
        assert!((s.values[0] - oracle).abs() < 1e-14);
        assert!(s.terms_used >= 4);
    }

    #[test]
    fn zero_series() {
        let s = sum_ladder(|_| 0.0, 0.0, 1e-12).unwrap();
        assert_eq!(s.values[0], 0.0);
    }

    #[test]
    fn geometric_series() {
        let s = sum_ladder(|m| (-m).exp(), 1.0, 1e-15).unwrap();
        let exact = 1.0 / (std::f64::consts::E - 1.0);
        assert!((s.values[0] - exact).abs() < 1e-14);
        assert!(s.truncation_error[0] < 1e-14);
    }

    #[test]
    fn growing_series_reports_divergence() {
        let err = sum_ladder(|m| m.exp(), 0.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::LadderDiverged { .. }));
    }

    #[test]
    fn rising_then_falling_terms_are_not_truncated_early() {
        // Peak at m = 20; the first terms are tiny relative to the bulk.
        let f = |m: f64| (-(m - 20.0).powi(2) / 8.0).exp();
        let s = sum_ladder(f, 0.0, 1e-13).unwrap();
        let direct: f64 = (0..200).map(|m| f(m as f64)).sum();
        assert!((s.values[0] - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn refinement_is_stable() {
        let f = |m: f64| (-0.01 * m * m + 0.3 * m).exp();
        let mut tol = 1e-4;
        let mut previous = sum_ladder(f, 0.5, tol).unwrap().values[0];
        while tol > 1e-13 {
            let next = sum_ladder(f, 0.5, tol / 2.0).unwrap().values[0];
            assert!(((next - previous) / next).abs() < tol, "tol {tol}");
            previous = next;
            tol /= 2.0;
        }
    }
}
