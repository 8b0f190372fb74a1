//! Im χ⁺⁻ for anisotropic exchange at high temperature, T ≫ Δ > J⊥ − J_z.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::DotParams;
use crate::numerics::g_aux;
use crate::partition::{zs_high_t, zs_n_operator};

/// Evaluator for one parameter set; Z_S is computed once.
#[derive(Debug, Clone)]
pub struct AnisoSusceptibility {
    params: DotParams,
    zs: f64,
    isotropic: bool,
}

impl AnisoSusceptibility {
    pub fn new(p: &DotParams) -> Result<Self> {
        let zs = zs_high_t(p)?;
        Ok(AnisoSusceptibility {
            params: *p,
            zs,
            isotropic: p.is_isotropic(),
        })
    }

    pub fn params(&self) -> &DotParams {
        &self.params
    }

    pub fn zs(&self) -> f64 {
        self.zs
    }

    fn omega_bar(&self, omega: f64) -> f64 {
        omega / (2.0 * (self.params.jz - self.params.jperp))
    }

    /// ln|Im χ| and the sign of the formula
    ///
    /// Im χ⁺⁻ = −π/(2|J_z−J⊥| Z_S) Σ_σ (n + σT∂/∂J⊥) Z_S(n) at n = −ω̄ + σ/2.
    ///
    /// Returns `(−∞, 0)` at ω = 0 and in the isotropic limit.
    pub fn ln_im_chi(&self, omega: f64) -> Result<(f64, f64)> {
        if !omega.is_finite() {
            return Err(Error::Domain(format!("Im χ at ω = {omega}")));
        }
        if omega == 0.0 || self.isotropic {
            return Ok((f64::NEG_INFINITY, 0.0));
        }
        let p = &self.params;
        let wb = self.omega_bar(omega);
        let plus = zs_n_operator(p, -wb + 0.5, 1.0)?;
        let minus = zs_n_operator(p, -wb - 0.5, -1.0)?;
        let scale = plus.ln_scale.max(minus.ln_scale);
        let sum = plus.mantissa * (plus.ln_scale - scale).exp()
            + minus.mantissa * (minus.ln_scale - scale).exp();
        if sum == 0.0 {
            return Ok((f64::NEG_INFINITY, 0.0));
        }
        let ln_prefactor = PI.ln() - (2.0 * (p.jz - p.jperp).abs() * self.zs).ln();
        let ln = ln_prefactor + scale + sum.abs().ln();
        if !ln.is_finite() {
            return Err(Error::NonFinite(format!("ln Im χ at ω = {omega}")));
        }
        Ok((ln, -sum.signum()))
    }

    pub fn im_chi(&self, omega: f64) -> Result<f64> {
        let (ln, sign) = self.ln_im_chi(omega)?;
        Ok(sign * ln.exp())
    }

    /// ln of the large-|ω̄| asymptote
    /// |ω̄|√(πβΔ)/(|J_z−J⊥|Z_S) e^{−β(Δ−J_z)|ω̄|(|ω̄|+1) + βJ⊥|ω̄|}.
    pub fn ln_asymptotic(&self, omega: f64) -> f64 {
        let p = &self.params;
        if omega == 0.0 || self.isotropic {
            return f64::NEG_INFINITY;
        }
        let beta = p.beta();
        let w = self.omega_bar(omega).abs();
        w.ln() + 0.5 * (PI * beta * p.delta).ln()
            - ((p.jz - p.jperp).abs() * self.zs).ln()
            - beta * (p.delta - p.jz) * w * (w + 1.0)
            + beta * p.jperp * w
    }

    /// Asymptote with the sign of ω (absorption positive).
    pub fn asymptotic(&self, omega: f64) -> f64 {
        omega.signum() * self.ln_asymptotic(omega).exp()
    }

    /// Coefficient of ω in the small-ω expansion, absorption positive:
    /// √(πβΔ)/(2|J_z−J⊥|(Δ−J⊥)Z_S) [(2Δ−J⊥)/(2(Δ−J⊥))
    /// + √π/(2√(β(Δ−J⊥))) g(βJ⊥²/(4(Δ−J⊥)))].
    pub fn slope0(&self) -> Result<f64> {
        let p = &self.params;
        if self.isotropic {
            return Ok(0.0);
        }
        let (d, jp, beta) = (p.delta, p.jperp, p.beta());
        let g = g_aux(beta * jp * jp / (4.0 * (d - jp)))?;
        let bracket =
            (2.0 * d - jp) / (2.0 * (d - jp)) + PI.sqrt() / (2.0 * (beta * (d - jp)).sqrt()) * g;
        Ok((PI * beta * d).sqrt() / (2.0 * (p.jz - jp).abs() * (d - jp) * self.zs) * bracket)
    }
}

pub fn aniso_im_chi(omega: f64, p: &DotParams) -> Result<f64> {
    AnisoSusceptibility::new(p)?.im_chi(omega)
}

pub fn aniso_im_chi_asymptotic(omega: f64, p: &DotParams) -> Result<f64> {
    Ok(AnisoSusceptibility::new(p)?.asymptotic(omega))
}

pub fn aniso_im_chi_slope0(p: &DotParams) -> Result<f64> {
    AnisoSusceptibility::new(p)?.slope0()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::zs_n;

    fn params(t: f64, jz: f64, jperp: f64) -> DotParams {
        DotParams {
            jz,
            jperp,
            temperature: t,
            ..DotParams::default()
        }
    }

    /// Same formula from Z_S(n) and its derivative, without the term-wise operator.
    fn from_ladders(omega: f64, p: &DotParams) -> f64 {
        let zs = zs_high_t(p).unwrap();
        let wb = omega / (2.0 * (p.jz - p.jperp));
        let mut total = 0.0;
        for sigma in [1.0, -1.0] {
            let n = -wb + sigma / 2.0;
            let z = zs_n(p, n).unwrap();
            total += n * z.value() + sigma * p.temperature * z.derivative_jperp();
        }
        -PI / (2.0 * (p.jz - p.jperp).abs() * zs) * total
    }

    #[test]
    fn zero_frequency_and_isotropic_point() {
        let p = params(5.0, 0.4, 0.98);
        assert_eq!(aniso_im_chi(0.0, &p).unwrap(), 0.0);
        let iso = params(5.0, 0.5, 0.5);
        assert_eq!(aniso_im_chi(0.3, &iso).unwrap(), 0.0);
    }

    #[test]
    fn operator_form_matches_ladders() {
        for p in [params(5.0, 0.4, 0.98), params(10.0, 0.7, 0.3), params(20.0, 0.2, 0.5)] {
            for omega in [0.05, 0.5, 1.0, 2.0] {
                let a = aniso_im_chi(omega, &p).unwrap();
                let b = from_ladders(omega, &p);
                assert!((a - b).abs() < 1e-8 * b.abs(), "{p:?} ω = {omega}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn absorption_is_positive_and_odd() {
        for p in [params(5.0, 0.4, 0.98), params(5.0, 0.7, 0.3)] {
            let chi = AnisoSusceptibility::new(&p).unwrap();
            for omega in [0.01, 0.2, 1.0, 3.0] {
                let a = chi.im_chi(omega).unwrap();
                let b = chi.im_chi(-omega).unwrap();
                assert!(a > 0.0);
                assert!((a + b).abs() < 1e-10 * a, "ω = {omega}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn asymptote_sign_and_decay() {
        let chi = AnisoSusceptibility::new(&params(5.0, 0.7, 0.3)).unwrap();
        assert!(chi.asymptotic(10.0) > 0.0);
        assert_eq!(chi.asymptotic(-10.0), -chi.asymptotic(10.0));
        assert!(chi.ln_asymptotic(20.0) < chi.ln_asymptotic(10.0));
    }

    #[test]
    fn slope_without_transverse_exchange() {
        let p = params(20.0, 0.3, 0.0);
        let chi = AnisoSusceptibility::new(&p).unwrap();
        let expected = (PI * p.beta()).sqrt() / (2.0 * 0.3) / chi.zs();
        assert!((chi.slope0().unwrap() / expected - 1.0).abs() < 1e-12);
    }
}
