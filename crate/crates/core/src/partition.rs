//! Spin partition functions.
//!
//! High temperature: Z_S in closed form through F₁/F₂, and the ladder
//! function Z_S(n) with its J⊥-derivative. Low temperature: the grand
//! partition function over (n↑, n↓) with Z_n ≈ e^{−βΔn(n−1)/2}.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{j_star, DotParams};
use crate::numerics::{erf, f1, f2, sum_ladder_multi};

/// Relative truncation threshold of the Z_S(n) ladders.
pub const LADDER_REL_TOL: f64 = 1e-12;
/// Boundary weight, relative to the interior maximum, that closes the
/// particle-number window.
pub const WINDOW_REL_WEIGHT: f64 = 1e-12;
pub const DEFAULT_N_CUT: usize = 256;

fn require_below_delta(p: &DotParams) -> Result<()> {
    p.validate()?;
    if p.jperp >= p.delta || p.jz >= p.delta {
        return Err(Error::SingularParameter(format!(
            "spin partition function needs J⊥ < Δ and J_z < Δ (J⊥ = {}, J_z = {}, Δ = {})",
            p.jperp, p.jz, p.delta
        )));
    }
    Ok(())
}

/// Saddle-point spin partition function Z_S.
///
/// Easy axis (J_* > 0) uses F₁(Δ/(Δ−J⊥), √(βJ_*)), easy plane uses
/// F₂(Δ/(Δ−J⊥), √(β|J_*|)); both reduce to Δ/(Δ−J⊥) at J_* = 0.
pub fn zs_high_t(p: &DotParams) -> Result<f64> {
    require_below_delta(p)?;
    let (d, jp, beta) = (p.delta, p.jperp, p.beta());
    let js = j_star(p)?;
    let prefactor = (d / (d - p.jz)).sqrt() * (beta * jp * jp / (4.0 * (d - jp))).exp();
    let x = d / (d - jp);
    let f = if js >= 0.0 {
        f1(x, (beta * js).sqrt())?
    } else {
        f2(x, (beta * js.abs()).sqrt())?
    };
    let z = prefactor * f;
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::NonFinite(format!("Z_S = {z}")));
    }
    Ok(z)
}

/// Z_S(n) and ∂Z_S(n)/∂J⊥, stored as `scaled · e^{ln_scale}` so that values
/// far below the smallest double keep their mantissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderEval {
    pub ln_scale: f64,
    pub scaled_value: f64,
    pub scaled_derivative: f64,
    pub terms_used: usize,
    /// Tail estimate in the same scaled units.
    pub truncation_error: f64,
}

impl LadderEval {
    pub fn value(&self) -> f64 {
        self.scaled_value * self.ln_scale.exp()
    }

    pub fn derivative_jperp(&self) -> f64 {
        self.scaled_derivative * self.ln_scale.exp()
    }
}

/// A real number `mantissa · e^{ln_scale}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub ln_scale: f64,
    pub mantissa: f64,
}

impl Scaled {
    pub fn value(&self) -> f64 {
        self.mantissa * self.ln_scale.exp()
    }

    pub fn ln_abs(&self) -> f64 {
        self.ln_scale + self.mantissa.abs().ln()
    }
}

struct LadderSetup {
    a: f64,
    b: f64,
    abs_n: f64,
    /// ln of the largest ladder term, used as the common scale.
    peak_exponent: f64,
    ln_prefactor: f64,
}

fn ladder_setup(p: &DotParams, n: f64) -> Result<LadderSetup> {
    require_below_delta(p)?;
    if !n.is_finite() {
        return Err(Error::Domain(format!("Z_S(n) at n = {n}")));
    }
    let beta = p.beta();
    let a = beta * (p.delta - p.jperp);
    let b = beta * p.jperp;
    let abs_n = n.abs();
    let vertex = b / (2.0 * a);
    let peak_exponent = if vertex > abs_n {
        b * b / (4.0 * a)
    } else {
        -a * abs_n * abs_n + b * abs_n
    };
    let ln_prefactor = 0.5 * (beta * p.delta / PI).ln() + beta * (p.jz - p.jperp) * n * n;
    Ok(LadderSetup {
        a,
        b,
        abs_n,
        peak_exponent,
        ln_prefactor,
    })
}

/// Z_S(n) = √(βΔ/π) e^{β(J_z−J⊥)n²} [Σ_{m≥|n|} e^{−β(Δ−J⊥)m² + βJ⊥m}
/// − Σ_{m≥|n|+1} e^{−β(Δ−J⊥)m² − βJ⊥m}], unit-step ladders from a possibly
/// non-integer |n|. The derivative is taken term by term.
pub fn zs_n(p: &DotParams, n: f64) -> Result<LadderEval> {
    let s = ladder_setup(p, n)?;
    let beta = p.beta();
    let (a, b, m0, e0) = (s.a, s.b, s.abs_n, s.peak_exponent);
    let plus = sum_ladder_multi(
        |m| {
            let t = (-a * m * m + b * m - e0).exp();
            [t, beta * (m * m + m) * t]
        },
        m0,
        LADDER_REL_TOL,
    )?;
    let minus = sum_ladder_multi(
        |m| {
            let t = (-a * m * m - b * m - e0).exp();
            [t, beta * (m * m - m) * t]
        },
        m0 + 1.0,
        LADDER_REL_TOL,
    )?;
    let bracket = plus.values[0] - minus.values[0];
    let d_bracket = plus.values[1] - minus.values[1];
    Ok(LadderEval {
        ln_scale: s.ln_prefactor + e0,
        scaled_value: bracket,
        scaled_derivative: -beta * n * n * bracket + d_bracket,
        terms_used: plus.terms_used + minus.terms_used,
        truncation_error: plus.truncation_error[0] + minus.truncation_error[0],
    })
}

/// (n + σT ∂/∂J⊥) Z_S(n).
///
/// Each ladder term carries the coefficient n + σ(m² ± m − n²) with
/// m² − n² formed as k(2|n| + k), so the near-cancellation of n against the
/// derivative at large |n| is resolved term by term rather than after
/// summation.
pub fn zs_n_operator(p: &DotParams, n: f64, sigma: f64) -> Result<Scaled> {
    let s = ladder_setup(p, n)?;
    let (a, b, an, e0) = (s.a, s.b, s.abs_n, s.peak_exponent);
    let plus = sum_ladder_multi(
        |m| {
            let k = m - an;
            let t = (-a * m * m + b * m - e0).exp();
            [(n + sigma * (k * (2.0 * an + k) + m)) * t]
        },
        an,
        LADDER_REL_TOL,
    )?;
    let minus = sum_ladder_multi(
        |m| {
            let k = m - an;
            let t = (-a * m * m - b * m - e0).exp();
            [(n + sigma * (k * (2.0 * an + k) - m)) * t]
        },
        an + 1.0,
        LADDER_REL_TOL,
    )?;
    Ok(Scaled {
        ln_scale: s.ln_prefactor + e0,
        mantissa: plus.values[0] - minus.values[0],
    })
}

/// Closed erf form of Z_S(n), accurate when β(Δ−J⊥)(|n|+1) ≪ 1.
pub fn zs_n_approx(p: &DotParams, n: f64) -> Result<f64> {
    require_below_delta(p)?;
    let (d, jp, jz, beta) = (p.delta, p.jperp, p.jz, p.beta());
    let an = n.abs();
    let c = (beta * (d - jp)).sqrt();
    let shift = jp / (2.0 * (d - jp));
    let erfs = erf(c * (an + shift)) + erf(c * (shift - an));
    let first = 0.5
        * (d / (d - jp)).sqrt()
        * (beta * jp * jp / (4.0 * (d - jp)) + beta * (jz - jp) * n * n).exp()
        * erfs;
    let second = (beta * d / PI).sqrt() * (-beta * (d - jz) * n * n).exp() * (beta * jp * an).cosh();
    Ok(first + second)
}

/// Large-|n| limit √(βΔ/π) e^{−β(Δ−J_z)n² + βJ⊥|n|}.
pub fn zs_n_large(p: &DotParams, n: f64) -> f64 {
    let beta = p.beta();
    (beta * p.delta / PI).sqrt()
        * (-beta * (p.delta - p.jz) * n * n + beta * p.jperp * n.abs()).exp()
}

/// One (n↑, n↓, l) configuration of the low-temperature sum, with
/// `two_m = n↑ − n↓` and `two_l = 2l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowTState {
    pub n_up: u32,
    pub n_down: u32,
    pub two_m: i64,
    pub two_l: i64,
    /// Sgn(2m + 1) ∈ {−1, 0, 1}.
    pub sign: f64,
    /// ln of the unsigned Boltzmann weight.
    pub ln_weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrandPartition {
    pub ln_z: f64,
    /// Inclusive particle-number window that was summed.
    pub n_window: (u32, u32),
    pub states: Vec<LowTState>,
}

impl GrandPartition {
    pub fn value(&self) -> f64 {
        self.ln_z.exp()
    }
}

fn ln_zn(beta: f64, delta: f64, n: u32) -> f64 {
    let n = n as f64;
    -beta * delta * n * (n - 1.0) / 2.0
}

/// Most probable total particle number for balanced spins and no exchange.
pub fn window_center(p: &DotParams) -> f64 {
    let d = p.delta;
    (d / 2.0 + 2.0 * p.ec * p.n0 + p.mu) / (d / 2.0 + 2.0 * p.ec)
}

fn states_at_n(p: &DotParams, n: u32, out: &mut Vec<LowTState>) {
    let beta = p.beta();
    let nf = n as f64;
    let common = -beta * p.ec * (nf - p.n0).powi(2) + beta * p.mu * nf;
    for n_up in 0..=n {
        let n_down = n - n_up;
        let two_m = n_up as i64 - n_down as i64;
        let sign = (two_m + 1).signum() as f64;
        if sign == 0.0 {
            continue;
        }
        let m = two_m as f64 / 2.0;
        let base = ln_zn(beta, p.delta, n_up)
            + ln_zn(beta, p.delta, n_down)
            + common
            + beta * p.jperp * m * (m + 1.0);
        let two_l_max = (two_m + 1).abs() - 1;
        let mut two_l = -two_l_max;
        while two_l <= two_l_max {
            let l = two_l as f64 / 2.0;
            out.push(LowTState {
                n_up,
                n_down,
                two_m,
                two_l,
                sign,
                ln_weight: base + beta * (p.jz - p.jperp) * l * l,
            });
            two_l += 2;
        }
    }
}

fn max_ln_weight(states: &[LowTState]) -> f64 {
    states
        .iter()
        .map(|s| s.ln_weight)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Σ_{n↑,n↓} Z_{n↑}Z_{n↓} e^{−βE_c(n−N₀)² + βμn + βJ⊥m(m+1)} Sgn(2m+1)
/// Σ_l e^{β(J_z−J⊥)l²}, over a particle-number window around the charging
/// minimum that grows until its boundary weight falls below
/// [`WINDOW_REL_WEIGHT`] of the interior maximum. `n_cut` caps the half-width.
pub fn grand_partition_low_t(p: &DotParams, n_cut: usize) -> Result<GrandPartition> {
    p.validate()?;
    let center = window_center(p).round().max(0.0) as i64;
    let mut half = 2usize;
    loop {
        let lo = (center - half as i64).max(0) as u32;
        let hi = (center + half as i64) as u32;
        let mut states = Vec::new();
        let mut edge_lo = f64::NEG_INFINITY;
        let mut edge_hi = f64::NEG_INFINITY;
        for n in lo..=hi {
            let before = states.len();
            states_at_n(p, n, &mut states);
            let local = max_ln_weight(&states[before..]);
            if n == lo && lo > 0 {
                edge_lo = local;
            }
            if n == hi {
                edge_hi = local;
            }
        }
        let peak = max_ln_weight(&states);
        let closed = edge_lo.max(edge_hi) < peak + WINDOW_REL_WEIGHT.ln();
        if closed {
            let total: f64 = states
                .iter()
                .map(|s| s.sign * (s.ln_weight - peak).exp())
                .sum();
            if !(total > 0.0) {
                return Err(Error::NonFinite(format!(
                    "low-temperature grand partition function is not positive ({total:e})"
                )));
            }
            return Ok(GrandPartition {
                ln_z: peak + total.ln(),
                n_window: (lo, hi),
                states,
            });
        }
        if half >= n_cut {
            return Err(Error::Window { half_width: half });
        }
        half = (half * 2).min(n_cut);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(t: f64, jz: f64, jperp: f64) -> DotParams {
        DotParams {
            jz,
            jperp,
            temperature: t,
            ..DotParams::default()
        }
    }

    #[test]
    fn isotropic_zs_closed_form() {
        let p = params(20.0, 0.5, 0.5);
        let expected = (2.0f64).sqrt() * (0.05 * 0.25 / 2.0f64).exp() * 2.0;
        assert!((zs_high_t(&p).unwrap() / expected - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zs_rejects_singular_exchange() {
        assert!(zs_high_t(&params(20.0, 0.4, 1.0)).is_err());
        assert!(zs_n(&params(20.0, 0.4, 1.0), 0.0).is_err());
    }

    #[test]
    fn zs_n_first_terms_at_low_temperature() {
        let p = params(0.02, 0.1, 0.2);
        let beta = p.beta();
        let expected = (beta / PI).sqrt() * (1.0 - (-beta).exp());
        let got = zs_n(&p, 0.0).unwrap().value();
        assert!((got / expected - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zs_n_is_even() {
        let p = params(5.0, 0.4, 0.98);
        for n in [0.3, 1.5, 7.25] {
            let a = zs_n(&p, n).unwrap();
            let b = zs_n(&p, -n).unwrap();
            assert!((a.value() / b.value() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn operator_matches_value_and_derivative() {
        let p = params(5.0, 0.7, 0.3);
        for n in [0.5, -1.25, 3.0] {
            for sigma in [1.0, -1.0] {
                let z = zs_n(&p, n).unwrap();
                let direct = n * z.value() + sigma * p.temperature * z.derivative_jperp();
                let op = zs_n_operator(&p, n, sigma).unwrap().value();
                assert!((op - direct).abs() < 1e-10 * direct.abs().max(z.value()));
            }
        }
    }

    #[test]
    fn approx_at_zero_without_exchange() {
        let p = params(50.0, 0.3, 0.0);
        let expected = (p.beta() / PI).sqrt();
        assert!((zs_n_approx(&p, 0.0).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn charging_projects_onto_fixed_n() {
        let p = DotParams {
            jz: 0.3,
            jperp: 0.2,
            ec: 1e4,
            n0: 2.0,
            mu: 0.0,
            temperature: 0.5,
            ..DotParams::default()
        };
        let gp = grand_partition_low_t(&p, DEFAULT_N_CUT).unwrap();
        // n = 2: (n↑, n↓) = (2,0) m = 1 with l ∈ {−1,0,1}; (1,1) m = 0 with l = 0;
        // (0,2) m = −1 with sign −1 and l = 0.
        let b = p.beta();
        let z2 = (-b).exp();
        let m1 = z2 * (2.0 * b * 0.2).exp() * (1.0 + 2.0 * (b * 0.1).exp());
        let m0 = 1.0;
        let mm1 = -z2;
        let hand = m1 + m0 + mm1;
        // The charging weight e^{−βE_c(n−N₀)²} is 1 at n = N₀.
        assert!((gp.value() / hand - 1.0).abs() < 1e-12);
    }

    #[test]
    fn window_grows_until_boundary_is_negligible() {
        let p = DotParams {
            jz: 0.8,
            jperp: 0.4,
            ec: 5.0,
            n0: 10.0,
            mu: 4.5,
            temperature: 0.01,
            ..DotParams::default()
        };
        let gp = grand_partition_low_t(&p, DEFAULT_N_CUT).unwrap();
        assert!(gp.n_window.0 <= 10 && gp.n_window.1 >= 10);
        assert!(gp.ln_z.is_finite());
        assert!(matches!(
            grand_partition_low_t(&DotParams { ec: 0.0, temperature: 50.0, ..p }, 4),
            Err(Error::Window { .. })
        ));
    }
}
