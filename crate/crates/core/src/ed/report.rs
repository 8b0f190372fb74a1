//! Identity checks that bind the exact spectrum to the QFI formulas.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hamiltonian::{build_and_diagonalize, full_space_check, EdModel, EigenSystem};
use super::lehmann::{lehmann_comb, thermal_qfi, variance_sx, Channel};
use crate::error::Result;
use crate::model::DotParams;
use crate::qfi::qfi_from_comb;
use crate::susceptibility::{DeltaComb, EPS_MERGE};

pub const EQ15_TOL: f64 = 1e-8;
pub const CONVENTION_TOL: f64 = 1e-10;
pub const ODDNESS_TOL: f64 = 1e-10;
pub const RECONSTRUCTION_TOL: f64 = 1e-10;
pub const BLOCK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            passed: residual <= tolerance,
            residual,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub model: EdModel,
    pub temperature: f64,
    pub qfi_double_sum: f64,
    pub qfi_comb: f64,
    pub variance_sx: f64,
    pub checks: Vec<Check>,
}

impl OracleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Largest |w_a(ω) − factor · w_b(ω)| over the union of peaks, relative to
/// the largest |w_a|.
pub fn comb_ratio_residual(a: &DeltaComb, b: &DeltaComb, factor: f64) -> f64 {
    let scale = a
        .peaks
        .iter()
        .map(|p| p.weight.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let tol = 10.0 * EPS_MERGE;
    let from_a = a
        .peaks
        .iter()
        .map(|p| (p.weight - factor * b.weight_at(p.omega, tol)).abs());
    let from_b = b
        .peaks
        .iter()
        .map(|p| (a.weight_at(p.omega, tol) - factor * p.weight).abs());
    from_a.chain(from_b).fold(0.0, f64::max) / scale
}

pub fn oracle_report_for(es: &EigenSystem, temperature: f64) -> Result<OracleReport> {
    let pm = lehmann_comb(es, temperature, Channel::PlusMinus);
    let xx = lehmann_comb(es, temperature, Channel::XX);
    let params: DotParams = es.model.dot_params(temperature);
    let q_sum = thermal_qfi(es, temperature);
    let q_comb = qfi_from_comb(&xx, &params)?.value;
    let var = variance_sx(es, temperature);
    let eq15 = (q_sum - q_comb).abs() / q_sum.abs().max(f64::MIN_POSITIVE);
    let eq15 = if q_sum == 0.0 && q_comb == 0.0 { 0.0 } else { eq15 };
    let (leak, mismatch) = full_space_check(es);
    let checks = vec![
        Check::new("qfi_double_sum_equals_comb_sum", eq15, EQ15_TOL),
        Check::new("plus_minus_is_twice_xx", comb_ratio_residual(&pm, &xx, 2.0), CONVENTION_TOL),
        Check::new(
            "qfi_below_four_variance",
            ((q_sum - 4.0 * var) / (4.0 * var).max(f64::MIN_POSITIVE)).max(0.0),
            1e-12,
        ),
        Check::new(
            "comb_oddness",
            pm.oddness_residual().max(xx.oddness_residual()),
            ODDNESS_TOL,
        ),
        Check::new("no_cross_sector_elements", leak, BLOCK_TOL),
        Check::new("sector_blocks_match_operator_form", mismatch, BLOCK_TOL),
        Check::new(
            "eigendecomposition_reconstructs_h",
            es.reconstruction_residual(),
            RECONSTRUCTION_TOL,
        ),
    ];
    Ok(OracleReport {
        model: es.model.clone(),
        temperature,
        qfi_double_sum: q_sum,
        qfi_comb: q_comb,
        variance_sx: var,
        checks,
    })
}

pub fn oracle_report(model: &EdModel, temperature: f64) -> Result<OracleReport> {
    let es = build_and_diagonalize(model)?;
    oracle_report_for(&es, temperature)
}

/// Equally spaced levels (Δ = 1) with J_z, J⊥, E_c uniform in [0, 0.8],
/// half filling N₀ = L and μ at the middle of the band.
pub fn random_model(levels: usize, seed: u64) -> EdModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    EdModel {
        levels: (0..levels).map(|a| a as f64).collect(),
        jz: rng.gen_range(0.0..0.8),
        jperp: rng.gen_range(0.0..0.8),
        ec: rng.gen_range(0.0..0.8),
        n0: levels as f64,
        mu: (levels as f64 - 1.0) / 2.0,
    }
}

/// Temperature uniform in [0.2, 5], drawn from the stream after the model.
pub fn random_temperature(seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
    rng.gen_range(0.2..5.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_draws_pass() {
        for seed in 0..4 {
            let m = random_model(3, seed);
            let r = oracle_report(&m, 0.5).unwrap();
            assert!(r.all_passed(), "{:#?}", r.checks);
        }
    }

    #[test]
    fn single_level_passes() {
        let m = EdModel {
            levels: vec![0.0],
            jz: 0.0,
            jperp: 0.0,
            ec: 0.0,
            n0: 0.0,
            mu: 0.0,
        };
        assert!(oracle_report(&m, 1.0).unwrap().all_passed());
    }

    #[test]
    fn isotropic_exchange_has_no_dynamic_response() {
        let m = EdModel {
            jz: 0.5,
            jperp: 0.5,
            ..random_model(3, 7)
        };
        let es = build_and_diagonalize(&m).unwrap();
        let xx = lehmann_comb(&es, 0.5, Channel::XX);
        assert!(xx.peaks.iter().all(|p| p.weight.abs() < 1e-12 || p.omega.abs() < 1e-9));
        assert!(thermal_qfi(&es, 0.5) < 1e-12);
    }

    #[test]
    fn draws_are_reproducible() {
        assert_eq!(random_model(4, 11), random_model(4, 11));
        assert_ne!(random_model(4, 11), random_model(4, 12));
        let t = random_temperature(3);
        assert!((0.2..5.0).contains(&t));
    }
}
