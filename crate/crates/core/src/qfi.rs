//! Quantum Fisher information QFI = (4/π) ∫₀^∞ dω tanh(βω/2) Im χ(ω).

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ground_state_spin, DotParams, Parity, SpinMode};
use crate::numerics::{Quadrature, PHYSICS_REL_TOL};
use crate::susceptibility::{
    default_omega_max, ising_im_chi, AnisoSusceptibility, DeltaComb,
};

/// Largest acceptable contribution of the octave beyond omega_max.
pub const TAIL_REL: f64 = 1e-10;
const MAX_OCTAVES: usize = 64;
/// Negative positive-frequency comb weights below this fraction of the largest
/// weight are rounding noise.
const COMB_NEGATIVE_REL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QfiMethod {
    CurveIntegral,
    CombSum,
    ClosedForm,
}

/// Which response enters the integral: Im χ⁺⁻ as printed, or the hermitian
/// generator S_x with Im χˣˣ = Im χ⁺⁻/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Convention {
    #[default]
    Paper,
    Hermitian,
}

impl Convention {
    pub fn factor(self) -> f64 {
        match self {
            Convention::Paper => 1.0,
            Convention::Hermitian => 0.5,
        }
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Convention::Paper),
            "hermitian" => Ok(Convention::Hermitian),
            _ => Err(format!("unknown convention '{s}' (expected paper|hermitian)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QfiResult {
    pub value: f64,
    pub method: QfiMethod,
    pub integral_error: f64,
}

impl QfiResult {
    fn exact(value: f64, method: QfiMethod) -> Self {
        QfiResult {
            value,
            method,
            integral_error: 0.0,
        }
    }

    pub fn in_convention(self, convention: Convention) -> Self {
        QfiResult {
            value: self.value * convention.factor(),
            integral_error: self.integral_error * convention.factor(),
            ..self
        }
    }
}

fn kernel(beta: f64, omega: f64) -> f64 {
    (beta * omega / 2.0).tanh()
}

fn integrate_kernel<F>(imchi: &F, beta: f64, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let quad = Quadrature::new(PHYSICS_REL_TOL).with_abs_floor(1e-300);
    let r = quad.try_integrate(|w| Ok(kernel(beta, w) * imchi(w)?), a, b)?;
    Ok((r.value, r.abs_error_estimate))
}

/// (4/π)∫₀^{omega_max} tanh(βω/2) Im χ dω. The octave [omega_max, 2·omega_max]
/// must contribute less than [`TAIL_REL`] of the total.
pub fn qfi_from_curve<F>(imchi: F, p: &DotParams, omega_max: f64) -> Result<QfiResult>
where
    F: Fn(f64) -> Result<f64>,
{
    p.validate()?;
    if !(omega_max > 0.0) || !omega_max.is_finite() {
        return Err(Error::InvalidParameter {
            name: "omega_max",
            value: omega_max,
            reason: "must be positive and finite",
        });
    }
    let beta = p.beta();
    let (body, err) = integrate_kernel(&imchi, beta, 0.0, omega_max)?;
    let (tail, _) = integrate_kernel(&imchi, beta, omega_max, 2.0 * omega_max)?;
    if tail.abs() > TAIL_REL * body.abs() && tail != 0.0 {
        return Err(Error::TailTooLarge {
            omega_max,
            tail,
            total: body,
        });
    }
    finish(body, err)
}

fn finish(integral: f64, err: f64) -> Result<QfiResult> {
    let value = 4.0 / PI * integral;
    if value < 0.0 {
        return Err(Error::Domain(format!(
            "QFI integral is negative ({value:e}); Im χ must be absorptive"
        )));
    }
    Ok(QfiResult {
        value,
        method: QfiMethod::CurveIntegral,
        integral_error: 4.0 / PI * err,
    })
}

/// Like [`qfi_from_curve`] but doubles the cutoff, starting from `omega_start`,
/// until the last octave contributes less than [`TAIL_REL`].
pub fn qfi_from_curve_auto<F>(imchi: F, p: &DotParams, omega_start: f64) -> Result<QfiResult>
where
    F: Fn(f64) -> Result<f64>,
{
    p.validate()?;
    let beta = p.beta();
    let mut upper = omega_start;
    let (mut total, mut err) = integrate_kernel(&imchi, beta, 0.0, upper)?;
    for _ in 0..MAX_OCTAVES {
        let (octave, e) = integrate_kernel(&imchi, beta, upper, 2.0 * upper)?;
        total += octave;
        err += e;
        upper *= 2.0;
        if octave.abs() <= TAIL_REL * total.abs() || octave == 0.0 {
            return finish(total, err);
        }
    }
    Err(Error::TailTooLarge {
        omega_max: upper,
        tail: f64::NAN,
        total,
    })
}

/// (4/π) Σ_{ω_k > 0} w_k tanh(βω_k/2).
pub fn qfi_from_comb(comb: &DeltaComb, p: &DotParams) -> Result<QfiResult> {
    p.validate()?;
    let beta = p.beta();
    let max = comb
        .peaks
        .iter()
        .map(|pk| pk.weight.abs())
        .fold(0.0, f64::max);
    let mut sum = 0.0;
    for pk in comb.peaks.iter().filter(|pk| pk.omega > 0.0) {
        if pk.weight < -COMB_NEGATIVE_REL * max {
            return Err(Error::NonPhysicalComb {
                omega: pk.omega,
                weight: pk.weight,
            });
        }
        sum += pk.weight * kernel(beta, pk.omega);
    }
    Ok(QfiResult::exact(
        (4.0 / PI * sum).max(0.0),
        QfiMethod::CombSum,
    ))
}

/// 4S tanh[(J_z − J⊥)(2S − 1)/(2T)], zero when S ≤ ½ or J_z ≤ J⊥.
pub fn qfi_low_t_closed(p: &DotParams, mode: SpinMode, parity: Parity) -> Result<QfiResult> {
    let s = ground_state_spin(p, mode, parity)?;
    if s <= 0.5 || p.jz <= p.jperp {
        return Ok(QfiResult::exact(0.0, QfiMethod::ClosedForm));
    }
    let arg = (p.jz - p.jperp) * (2.0 * s - 1.0) / (2.0 * p.temperature);
    Ok(QfiResult::exact(4.0 * s * arg.tanh(), QfiMethod::ClosedForm))
}

pub fn qfi_ising(p: &DotParams) -> Result<QfiResult> {
    let start = default_omega_max(p);
    qfi_from_curve_auto(|w| ising_im_chi(w, p), p, start)
}

/// Zero at the isotropic point, where the smooth response vanishes.
pub fn qfi_aniso(p: &DotParams) -> Result<QfiResult> {
    p.validate()?;
    if p.is_isotropic() {
        return Ok(QfiResult::exact(0.0, QfiMethod::CurveIntegral));
    }
    let chi = AnisoSusceptibility::new(p)?;
    qfi_from_curve_auto(|w| chi.im_chi(w), p, default_omega_max(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susceptibility::{isotropic_comb, low_t_ground_state_comb, Peak};

    fn params(t: f64, jz: f64, jperp: f64) -> DotParams {
        DotParams {
            jz,
            jperp,
            temperature: t,
            ..DotParams::default()
        }
    }

    #[test]
    fn zero_curve() {
        let r = qfi_from_curve(|_| Ok(0.0), &params(1.0, 0.1, 0.0), 3.0).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn heavy_tail_is_rejected() {
        let p = params(1.0, 0.1, 0.0);
        let err = qfi_from_curve(|w| Ok((-w).exp()), &p, 2.0).unwrap_err();
        assert!(matches!(err, Error::TailTooLarge { .. }));
        assert!(qfi_from_curve(|w| Ok((-w).exp()), &p, 40.0).is_ok());
    }

    #[test]
    fn comb_sum_matches_closed_form() {
        let p = params(0.3, 0.9, 0.5);
        let comb = low_t_ground_state_comb(&p, SpinMode::Continuous, Parity::Even).unwrap();
        let a = qfi_from_comb(&comb, &p).unwrap().value;
        let b = qfi_low_t_closed(&p, SpinMode::Continuous, Parity::Even).unwrap().value;
        assert!((a / b - 1.0).abs() < 1e-12);
        assert!((b - 8.0 * (1.2f64 / 0.6).tanh()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_zeros() {
        let p = params(0.3, 0.5, 0.5);
        assert_eq!(qfi_low_t_closed(&p, SpinMode::Continuous, Parity::Even).unwrap().value, 0.0);
        assert_eq!(qfi_aniso(&params(20.0, 0.5, 0.5)).unwrap().value, 0.0);
        assert_eq!(qfi_from_comb(&isotropic_comb(&p, 1.0, 0.0), &p).unwrap().value, 0.0);
        assert_eq!(qfi_from_comb(&DeltaComb::empty(p), &p).unwrap().value, 0.0);
    }

    #[test]
    fn negative_absorption_rejected() {
        let p = params(1.0, 0.5, 0.2);
        let comb = DeltaComb::from_peaks(vec![Peak { omega: 1.0, weight: -1.0 }], p);
        assert!(matches!(
            qfi_from_comb(&comb, &p),
            Err(Error::NonPhysicalComb { .. })
        ));
    }

    #[test]
    fn hermitian_convention_halves() {
        let p = params(0.3, 0.9, 0.5);
        let r = qfi_low_t_closed(&p, SpinMode::Continuous, Parity::Even).unwrap();
        assert_eq!(r.in_convention(Convention::Hermitian).value, r.value / 2.0);
        assert_eq!(r.in_convention(Convention::Paper), r);
    }
}
