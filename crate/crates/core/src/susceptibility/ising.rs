//! Im χ⁺⁻ for Ising exchange (J⊥ = 0) at Δ ≪ T ≪ E_c.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::DotParams;
use crate::numerics::ln_sinh;

fn check(p: &DotParams) -> Result<()> {
    p.validate()?;
    if p.jz <= 0.0 {
        return Err(Error::SingularParameter(
            "Ising susceptibility needs J_z > 0; use the isotropic path".into(),
        ));
    }
    if p.jz >= p.delta {
        return Err(Error::Regime(format!(
            "Ising susceptibility needs J_z < Δ (J_z = {}, Δ = {})",
            p.jz, p.delta
        )));
    }
    Ok(())
}

/// ln|Im χ| and its sign (the sign of ω). Returns `(−∞, 0)` at ω = 0.
///
/// Works with u = ω/J_z so the Gaussian exponent and the sinh ratio are
/// formed separately and never overflow.
pub fn ising_ln_im_chi(omega: f64, p: &DotParams) -> Result<(f64, f64)> {
    check(p)?;
    if !omega.is_finite() {
        return Err(Error::Domain(format!("Im χ at ω = {omega}")));
    }
    if omega == 0.0 {
        return Ok((f64::NEG_INFINITY, 0.0));
    }
    let (d, jz, beta) = (p.delta, p.jz, p.beta());
    let u = omega / jz;
    let x = 1.0 + u;
    let c = beta * d / 2.0;
    // x / sinh(c x) is positive and even in x.
    let ln_ratio = if (c * x).abs() < 1e-8 {
        -c.ln()
    } else {
        x.abs().ln() - ln_sinh(c * x.abs())
    };
    let ln = 0.5 * (PI * beta * (d - jz)).ln() - (2.0 * jz).ln()
        + beta / 4.0 * (d + jz - (d - jz) * u * u)
        + ln_ratio
        + ln_sinh(beta * omega.abs() / 2.0);
    Ok((ln, omega.signum()))
}

/// Im χ⁺⁻(ω) = √(πβ(Δ−J_z))/(2J_z) e^{(β/4)[Δ+J_z−(Δ−J_z)(ω/J_z)²]}
/// (1 + ω/J_z) sinh(βω/2)/sinh[(βΔ/2)(1 + ω/J_z)]. J⊥ is ignored.
pub fn ising_im_chi(omega: f64, p: &DotParams) -> Result<f64> {
    let (ln, sign) = ising_ln_im_chi(omega, p)?;
    Ok(sign * ln.exp())
}

/// Re χ⁺⁻(0) = e^{β(Δ+J_z)/4}/Δ.
pub fn ising_static_chi(p: &DotParams) -> Result<f64> {
    p.validate()?;
    Ok((p.beta() * (p.delta + p.jz) / 4.0).exp() / p.delta)
}

/// ω₀ ≈ √(2T J_z²/(Δ − J_z)).
pub fn ising_peak_estimate(p: &DotParams) -> Result<f64> {
    p.validate()?;
    if p.jz >= p.delta {
        return Err(Error::Regime(format!(
            "peak estimate needs J_z < Δ (J_z = {})",
            p.jz
        )));
    }
    Ok((2.0 * p.temperature * p.jz * p.jz / (p.delta - p.jz)).sqrt())
}
