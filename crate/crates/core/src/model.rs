//! Dot parameters, units, regime classification and ground-state spin.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this |J_z − J⊥| (in units of Δ) the exchange is treated as isotropic.
pub const EPS_ISO: f64 = 1e-9;
/// `a ≪ b` is read as `a ≤ b / MUCH_LESS_FACTOR` for validity flags.
pub const MUCH_LESS_FACTOR: f64 = 5.0;
/// 1 meV expressed as a frequency E/h.
pub const GHZ_PER_MEV: f64 = 241.799;

/// Physical parameters of one dot. Energies share one unit, Δ by default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DotParams {
    pub delta: f64,
    pub jz: f64,
    pub jperp: f64,
    pub ec: f64,
    pub n0: f64,
    pub mu: f64,
    pub temperature: f64,
}

impl Default for DotParams {
    fn default() -> Self {
        DotParams {
            delta: 1.0,
            jz: 0.0,
            jperp: 0.0,
            ec: 0.0,
            n0: 0.0,
            mu: 0.0,
            temperature: 1.0,
        }
    }
}

impl DotParams {
    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("delta", self.delta),
            ("jz", self.jz),
            ("jperp", self.jperp),
            ("ec", self.ec),
            ("n0", self.n0),
            ("mu", self.mu),
            ("temperature", self.temperature),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite",
                });
            }
        }
        let positive = |name, value: f64, strict: bool, reason| {
            if (strict && value <= 0.0) || value < 0.0 {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    reason,
                })
            } else {
                Ok(())
            }
        };
        positive("delta", self.delta, true, "level spacing must be positive")?;
        positive("temperature", self.temperature, true, "temperature must be positive")?;
        positive("ec", self.ec, false, "charging energy must be non-negative")?;
        positive("jz", self.jz, false, "exchange is ferromagnetic (J_z ≥ 0)")?;
        positive("jperp", self.jperp, false, "exchange is ferromagnetic (J⊥ ≥ 0)")?;
        Ok(())
    }

    pub fn is_isotropic(&self) -> bool {
        (self.jz - self.jperp).abs() < EPS_ISO * self.delta
    }

    pub fn is_ising(&self) -> bool {
        self.jperp == 0.0
    }

    /// Looks up a field by its CLI name.
    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "delta" => self.delta,
            "jz" => self.jz,
            "jperp" => self.jperp,
            "ec" => self.ec,
            "n0" => self.n0,
            "mu" => self.mu,
            "temp" | "temperature" => self.temperature,
            _ => return None,
        })
    }

    /// Returns a copy with the named field replaced, or `None` for an unknown name.
    pub fn with(&self, name: &str, value: f64) -> Option<DotParams> {
        let mut p = *self;
        match name {
            "delta" => p.delta = value,
            "jz" => p.jz = value,
            "jperp" => p.jperp = value,
            "ec" => p.ec = value,
            "n0" => p.n0 = value,
            "mu" => p.mu = value,
            "temp" | "temperature" => p.temperature = value,
            _ => return None,
        }
        Some(p)
    }
}

pub const PARAM_NAMES: [&str; 7] = ["delta", "jz", "jperp", "ec", "n0", "mu", "temp"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Paramagnetic,
    MesoscopicStoner,
    Ferromagnetic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub phase: Phase,
    /// J_z < Δ ≪ T ≪ E_c.
    pub high_t_ising_valid: bool,
    /// T ≫ Δ > J⊥ − J_z.
    pub high_t_aniso_valid: bool,
    /// T ≪ Δ.
    pub low_t_valid: bool,
    pub notes: Vec<String>,
}

fn much_less(a: f64, b: f64) -> bool {
    a <= b / MUCH_LESS_FACTOR
}

pub fn classify_regime(p: &DotParams) -> RegimeReport {
    let d = p.delta;
    let phase = if p.jz.max(p.jperp) >= d {
        Phase::Ferromagnetic
    } else if p.is_isotropic() {
        if p.jz >= d / 2.0 {
            Phase::MesoscopicStoner
        } else {
            Phase::Paramagnetic
        }
    } else if d - p.jz < p.jperp && p.jperp < p.jz {
        Phase::MesoscopicStoner
    } else {
        Phase::Paramagnetic
    };

    let mut notes = Vec::new();
    let jz_below = p.jz < d;
    let d_much_less_t = much_less(d, p.temperature);
    let t_much_less_ec = much_less(p.temperature, p.ec);
    if !jz_below {
        notes.push("J_z ≥ Δ: beyond the Stoner instability".to_string());
    }
    if !d_much_less_t {
        notes.push("Δ ≪ T violated".to_string());
    }
    if !t_much_less_ec {
        notes.push("T ≪ E_c violated".to_string());
    }
    let jperp_window = d > p.jperp - p.jz;
    if !jperp_window {
        notes.push("Δ > J⊥ − J_z violated".to_string());
    }
    let low_t = much_less(p.temperature, d);
    if !low_t {
        notes.push("T ≪ Δ violated".to_string());
    }
    RegimeReport {
        phase,
        high_t_ising_valid: jz_below && d_much_less_t && t_much_less_ec,
        high_t_aniso_valid: d_much_less_t && jperp_window,
        low_t_valid: low_t,
        notes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SpinMode {
    #[default]
    Continuous,
    Discrete,
}

impl FromStr for SpinMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "continuous" => Ok(SpinMode::Continuous),
            "discrete" => Ok(SpinMode::Discrete),
            _ => Err(format!("unknown spin mode '{s}' (expected continuous|discrete)")),
        }
    }
}

/// Parity of the electron number; fixes whether S is integer or half-integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn offset(self) -> f64 {
        match self {
            Parity::Even => 0.0,
            Parity::Odd => 0.5,
        }
    }
}

/// Ground-state total spin.
///
/// The continuous mode uses `J/[2(Δ−J)]` for isotropic exchange and
/// `(J⊥ + J_z − Δ)/[2(Δ − J_z)]` otherwise, clamped at zero. The discrete
/// mode minimizes `(Δ − J_z)m² − J⊥m` over the parity ladder, ties going to
/// the smaller spin. Ising exchange gives 0 or ½ by parity in both modes.
pub fn ground_state_spin(p: &DotParams, mode: SpinMode, parity: Parity) -> Result<f64> {
    p.validate()?;
    let d = p.delta;
    if p.jz >= d || p.jperp >= d {
        return Err(Error::Regime(format!(
            "J_z = {}, J⊥ = {} at or above Δ = {d}: spin is extensive",
            p.jz, p.jperp
        )));
    }
    if p.is_ising() {
        return Ok(parity.offset());
    }
    match mode {
        SpinMode::Continuous => {
            let s = if p.is_isotropic() {
                p.jz / (2.0 * (d - p.jz))
            } else {
                (p.jperp + p.jz - d) / (2.0 * (d - p.jz))
            };
            // Snap rounding noise onto exact half-integers, so S = ½ gives 2S − 1 = 0.
            let twice = (2.0 * s).round();
            let s = if (2.0 * s - twice).abs() < 1e-12 { twice / 2.0 } else { s };
            Ok(s.max(0.0))
        }
        SpinMode::Discrete => {
            let energy = |m: f64| (d - p.jz) * m * m - p.jperp * m;
            let mut m = parity.offset();
            let mut e = energy(m);
            loop {
                let next = energy(m + 1.0);
                // Rounding must not break exact ties in favour of the larger spin.
                if next >= e - 1e-12 * d {
                    return Ok(m);
                }
                m += 1.0;
                e = next;
            }
        }
    }
}

/// J_* = (Δ − J⊥)(J_z − J⊥)/(Δ − J_z).
pub fn j_star(p: &DotParams) -> Result<f64> {
    if p.jz >= p.delta {
        return Err(Error::SingularParameter(format!(
            "J_* needs J_z < Δ (J_z = {}, Δ = {})",
            p.jz, p.delta
        )));
    }
    Ok((p.delta - p.jperp) * (p.jz - p.jperp) / (p.delta - p.jz))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Unit {
    #[default]
    Delta,
    MeV,
    GHz,
}

impl FromStr for Unit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "delta" | "Delta" => Ok(Unit::Delta),
            "meV" | "mev" => Ok(Unit::MeV),
            "GHz" | "ghz" => Ok(Unit::GHz),
            _ => Err(format!("unknown unit '{s}' (expected delta|meV|GHz)")),
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Delta => "delta",
            Unit::MeV => "meV",
            Unit::GHz => "GHz",
        })
    }
}

/// Converts an energy between Δ units, meV and GHz (E = hf).
pub fn convert_units(value: f64, from: Unit, to: Unit, delta_mev: f64) -> Result<f64> {
    if !(delta_mev > 0.0) || !delta_mev.is_finite() {
        return Err(Error::InvalidParameter {
            name: "delta_mev",
            value: delta_mev,
            reason: "level spacing in meV must be positive",
        });
    }
    if from == to {
        return Ok(value);
    }
    let mev = match from {
        Unit::Delta => value * delta_mev,
        Unit::MeV => value,
        Unit::GHz => value / GHZ_PER_MEV,
    };
    Ok(match to {
        Unit::Delta => mev / delta_mev,
        Unit::MeV => mev,
        Unit::GHz => mev * GHZ_PER_MEV,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(jz: f64, jperp: f64) -> DotParams {
        DotParams {
            jz,
            jperp,
            ..DotParams::default()
        }
    }

    #[test]
    fn phases() {
        assert_eq!(classify_regime(&params(0.3, 0.3)).phase, Phase::Paramagnetic);
        assert_eq!(classify_regime(&params(0.75, 0.75)).phase, Phase::MesoscopicStoner);
        assert_eq!(classify_regime(&params(1.1, 0.0)).phase, Phase::Ferromagnetic);
        assert_eq!(classify_regime(&params(0.9, 0.5)).phase, Phase::MesoscopicStoner);
        assert_eq!(classify_regime(&params(0.9, 0.0)).phase, Phase::Paramagnetic);
    }

    #[test]
    fn validity_flags() {
        let p = DotParams {
            jz: 0.1,
            temperature: 20.0,
            ec: 1000.0,
            ..DotParams::default()
        };
        let r = classify_regime(&p);
        assert!(r.high_t_ising_valid && r.high_t_aniso_valid && !r.low_t_valid);
        let cold = DotParams {
            temperature: 0.01,
            ..p
        };
        let r = classify_regime(&cold);
        assert!(r.low_t_valid && !r.high_t_ising_valid);
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn continuous_spin() {
        let s = |jz, jp| ground_state_spin(&params(jz, jp), SpinMode::Continuous, Parity::Even);
        assert!((s(0.75, 0.75).unwrap() - 1.5).abs() < 1e-12);
        assert!((s(0.9, 0.5).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(s(0.3, 0.2).unwrap(), 0.0);
        assert!(s(1.0, 0.5).is_err());
    }

    #[test]
    fn ising_spin_by_parity() {
        let p = params(0.5, 0.0);
        for mode in [SpinMode::Continuous, SpinMode::Discrete] {
            assert_eq!(ground_state_spin(&p, mode, Parity::Even).unwrap(), 0.0);
            assert_eq!(ground_state_spin(&p, mode, Parity::Odd).unwrap(), 0.5);
        }
    }

    #[test]
    fn discrete_spin() {
        let p = params(0.8, 0.4);
        assert_eq!(ground_state_spin(&p, SpinMode::Discrete, Parity::Even).unwrap(), 1.0);
        assert_eq!(ground_state_spin(&p, SpinMode::Discrete, Parity::Odd).unwrap(), 0.5);
        // E(0) = E(1) = 0 exactly; the tie goes down.
        let q = params(0.5, 0.5);
        assert_eq!(ground_state_spin(&q, SpinMode::Discrete, Parity::Even).unwrap(), 0.0);
    }

    #[test]
    fn j_star_values() {
        assert_eq!(j_star(&params(0.5, 0.5)).unwrap(), 0.0);
        assert!((j_star(&params(0.4, 0.0)).unwrap() - 0.4 / 0.6).abs() < 1e-15);
        assert!((j_star(&params(0.8, 0.4)).unwrap() - 1.2).abs() < 1e-12);
        assert!(j_star(&params(1.0, 0.4)).is_err());
    }

    #[test]
    fn units() {
        assert_eq!(convert_units(0.0, Unit::MeV, Unit::GHz, 1.0).unwrap(), 0.0);
        assert_eq!(convert_units(1.0, Unit::MeV, Unit::GHz, 1.0).unwrap(), 241.799);
        let ghz = convert_units(0.667, Unit::Delta, Unit::GHz, 1.0).unwrap();
        assert!((ghz - 161.28).abs() < 0.01);
        let x = 3.7;
        let back = convert_units(
            convert_units(x, Unit::MeV, Unit::GHz, 0.3).unwrap(),
            Unit::GHz,
            Unit::MeV,
            0.3,
        )
        .unwrap();
        assert!((back / x - 1.0).abs() < 1e-12);
        assert!(convert_units(1.0, Unit::MeV, Unit::GHz, 0.0).is_err());
        assert!("furlong".parse::<Unit>().is_err());
    }

    #[test]
    fn param_lookup() {
        let p = DotParams::default().with("temp", 3.0).unwrap();
        assert_eq!(p.get("temperature"), Some(3.0));
        assert!(p.with("bogus", 1.0).is_none());
        for name in PARAM_NAMES {
            assert!(p.get(name).is_some());
        }
    }
}
