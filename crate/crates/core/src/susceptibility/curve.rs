//! Sampled Im χ curves, default frequency grids and peak/width extraction.

use rayon::prelude::*;

use super::aniso::AnisoSusceptibility;
use super::ising::{ising_im_chi, ising_peak_estimate};
use crate::error::{Error, Result};
use crate::model::{classify_regime, ground_state_spin, DotParams, Parity, RegimeReport, SpinMode};

pub const DEFAULT_POINTS: usize = 400;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurve {
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
    pub params: DotParams,
    pub regime: RegimeReport,
    /// Whether the formula, before any sign convention, was ≥ 0 on ω > 0.
    pub raw_formula_positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveAnalysis {
    pub peak_omega: f64,
    pub peak_value: f64,
    pub fwhm: f64,
    pub single_max: bool,
}

/// Upper end of the default grid: max(3ω₀, 10|J_z − J⊥|(2S + 3), Δ).
pub fn default_omega_max(p: &DotParams) -> f64 {
    let ising = if p.jz > 0.0 && p.jz < p.delta {
        3.0 * ising_peak_estimate(p).unwrap_or(0.0)
    } else {
        0.0
    };
    let s = ground_state_spin(p, SpinMode::Continuous, Parity::Even).unwrap_or(0.0);
    let split = 10.0 * (p.jz - p.jperp).abs() * (2.0 * s + 3.0);
    ising.max(split).max(p.delta)
}

/// `points` values evenly spaced on [start, stop].
pub fn linear_grid(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let h = (stop - start) / (points - 1) as f64;
            (0..points)
                .map(|i| if i + 1 == points { stop } else { start + h * i as f64 })
                .collect()
        }
    }
}

pub fn default_grid(p: &DotParams) -> Vec<f64> {
    linear_grid(0.0, default_omega_max(p), DEFAULT_POINTS)
}

fn check_grid(omegas: &[f64]) -> Result<()> {
    if omegas.iter().any(|w| !w.is_finite()) || omegas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "frequency grid must be finite and strictly increasing".into(),
        ));
    }
    Ok(())
}

fn finish(omegas: &[f64], values: Vec<f64>, p: &DotParams) -> Result<SpectralCurve> {
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("Im χ at ω = {}", omegas[i])));
    }
    let raw_formula_positive = omegas
        .iter()
        .zip(&values)
        .all(|(&w, &v)| w <= 0.0 || v >= 0.0);
    Ok(SpectralCurve {
        omegas: omegas.to_vec(),
        values,
        params: *p,
        regime: classify_regime(p),
        raw_formula_positive,
    })
}

pub fn ising_curve(p: &DotParams, omegas: &[f64]) -> Result<SpectralCurve> {
    check_grid(omegas)?;
    let values = omegas
        .par_iter()
        .map(|&w| ising_im_chi(w, p))
        .collect::<Result<Vec<_>>>()?;
    finish(omegas, values, p)
}

pub fn aniso_curve(p: &DotParams, omegas: &[f64]) -> Result<SpectralCurve> {
    check_grid(omegas)?;
    let chi = AnisoSusceptibility::new(p)?;
    let values = omegas
        .par_iter()
        .map(|&w| chi.im_chi(w))
        .collect::<Result<Vec<_>>>()?;
    finish(omegas, values, p)
}

/// Peak by quadratic interpolation around the grid maximum, FWHM by linear
/// interpolation of the half-maximum crossings (the grid edge when a side
/// never drops below half).
pub fn analyze_curve(c: &SpectralCurve) -> Result<CurveAnalysis> {
    analyze_samples(&c.omegas, &c.values)
}

pub fn analyze_samples(x: &[f64], y: &[f64]) -> Result<CurveAnalysis> {
    if x.len() < 3 || x.len() != y.len() {
        return Err(Error::NoPeak);
    }
    let (imax, &ymax) = y
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .ok_or(Error::NoPeak)?;
    if !(ymax > 0.0) {
        return Err(Error::NoPeak);
    }
    let (mut peak_omega, mut peak_value) = (x[imax], ymax);
    if imax > 0 && imax + 1 < x.len() {
        let (x0, x1, x2) = (x[imax - 1], x[imax], x[imax + 1]);
        let (y0, y1, y2) = (y[imax - 1], y[imax], y[imax + 1]);
        let d01 = (y1 - y0) / (x1 - x0);
        let d12 = (y2 - y1) / (x2 - x1);
        let a = (d12 - d01) / (x2 - x0);
        if a < 0.0 {
            let b = d01 - a * (x0 + x1);
            let xv = -b / (2.0 * a);
            if xv > x0 && xv < x2 {
                peak_omega = xv;
                peak_value = y1 + (xv - x1) * (d01 + a * (xv - x0));
            }
        }
    }
    let half = peak_value / 2.0;
    let cross = |i: usize, j: usize| x[i] + (half - y[i]) * (x[j] - x[i]) / (y[j] - y[i]);
    let left = (1..=imax)
        .rev()
        .find(|&i| y[i - 1] < half)
        .map(|i| cross(i - 1, i))
        .unwrap_or(x[0]);
    let right = (imax..x.len() - 1)
        .find(|&i| y[i + 1] < half)
        .map(|i| cross(i, i + 1))
        .unwrap_or(x[x.len() - 1]);

    let mut changes = 0;
    let mut last_sign = 0.0;
    for w in y.windows(2) {
        let d = w[1] - w[0];
        if d == 0.0 {
            continue;
        }
        let s = d.signum();
        if last_sign != 0.0 && s != last_sign {
            changes += 1;
        }
        last_sign = s;
    }
    Ok(CurveAnalysis {
        peak_omega,
        peak_value,
        fwhm: right - left,
        single_max: changes == 1,
    })
}
