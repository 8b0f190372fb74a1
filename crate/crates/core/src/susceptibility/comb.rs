//! Spectral functions made of weighted delta peaks, Σ w_k δ(ω − ω_k).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{ground_state_spin, DotParams, Parity, SpinMode};
use crate::partition::grand_partition_low_t;

/// Peaks closer than this (in units of Δ) are one peak.
pub const EPS_MERGE: f64 = 1e-9;
/// Merged weights below this fraction of Σ|w| are cancellation noise.
pub const PRUNE_REL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub omega: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaComb {
    pub peaks: Vec<Peak>,
    pub params: DotParams,
    pub notes: Vec<String>,
}

impl DeltaComb {
    pub fn empty(params: DotParams) -> Self {
        DeltaComb {
            peaks: Vec::new(),
            params,
            notes: Vec::new(),
        }
    }

    /// Sorts, merges within [`EPS_MERGE`] and prunes cancelled peaks.
    pub fn from_peaks(peaks: Vec<Peak>, params: DotParams) -> Self {
        DeltaComb {
            peaks: merge_peaks(peaks, EPS_MERGE),
            params,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    pub fn total_abs_weight(&self) -> f64 {
        self.peaks.iter().map(|p| p.weight.abs()).sum()
    }

    /// Weight of the peak within `tol` of `omega`, or 0.
    pub fn weight_at(&self, omega: f64, tol: f64) -> f64 {
        self.peaks
            .iter()
            .filter(|p| (p.omega - omega).abs() <= tol)
            .map(|p| p.weight)
            .sum()
    }

    /// Largest |w(ω) + w(−ω)| over all peaks, relative to the largest |w|.
    pub fn oddness_residual(&self) -> f64 {
        let max = self
            .peaks
            .iter()
            .map(|p| p.weight.abs())
            .fold(0.0, f64::max);
        if max == 0.0 {
            return 0.0;
        }
        let tol = EPS_MERGE * 10.0;
        self.peaks
            .iter()
            .map(|p| (p.weight + self.weight_at(-p.omega, tol)).abs() / max)
            .fold(0.0, f64::max)
    }
}

/// Single-linkage merge: neighbours within `eps` join one cluster, placed at
/// the cluster's mean frequency and carrying the summed weight.
pub fn merge_peaks(mut peaks: Vec<Peak>, eps: f64) -> Vec<Peak> {
    peaks.retain(|p| p.weight != 0.0);
    peaks.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    let scale: f64 = peaks.iter().map(|p| p.weight.abs()).sum();
    let mut out: Vec<Peak> = Vec::new();
    let mut i = 0;
    while i < peaks.len() {
        let mut j = i + 1;
        while j < peaks.len() && peaks[j].omega - peaks[j - 1].omega <= eps {
            j += 1;
        }
        let cluster = &peaks[i..j];
        let omega = cluster.iter().map(|p| p.omega).sum::<f64>() / cluster.len() as f64;
        let weight = cluster.iter().map(|p| p.weight).sum::<f64>();
        if weight.abs() > PRUNE_REL * scale {
            out.push(Peak { omega, weight });
        }
        i = j;
    }
    out
}

/// Low-temperature comb from the (n↑, n↓, l) sum: peaks at (J_z−J⊥)(2l+1)
/// with weight −πW[m(m+1) − l² − l]/Z and at (J_z−J⊥)(2l−1) with weight
/// +πW[m(m+1) − l² + l]/Z, W the signed Boltzmann weight of the state.
pub fn low_t_delta_comb(p: &DotParams, n_cut: usize) -> Result<DeltaComb> {
    let gp = grand_partition_low_t(p, n_cut)?;
    let split = p.jz - p.jperp;
    let mut peaks = Vec::with_capacity(2 * gp.states.len());
    for s in &gp.states {
        let w = s.sign * (s.ln_weight - gp.ln_z).exp();
        if w == 0.0 {
            continue;
        }
        // m(m+1) − l² ∓ l in quarter units: 4m(m+1) = 2m(2m+2).
        let mm = s.two_m * (s.two_m + 2);
        let ll = s.two_l * s.two_l;
        let c_up = (mm - ll - 2 * s.two_l) as f64 / 4.0;
        let c_down = (mm - ll + 2 * s.two_l) as f64 / 4.0;
        peaks.push(Peak {
            omega: split * (s.two_l + 1) as f64,
            weight: -PI * w * c_up,
        });
        peaks.push(Peak {
            omega: split * (s.two_l - 1) as f64,
            weight: PI * w * c_down,
        });
    }
    let mut comb = DeltaComb::from_peaks(peaks, *p);
    comb.notes.push(format!(
        "particle-number window {}..={}",
        gp.n_window.0, gp.n_window.1
    ));
    Ok(comb)
}

/// Ground-state comb πS[δ(ω − ω_S) − δ(ω + ω_S)], ω_S = (J_z − J⊥)(2S − 1).
///
/// Empty, with a note, when S ≤ ½ or J_z ≤ J⊥.
pub fn low_t_ground_state_comb(p: &DotParams, mode: SpinMode, parity: Parity) -> Result<DeltaComb> {
    let s = ground_state_spin(p, mode, parity)?;
    if p.jz <= p.jperp {
        return Ok(DeltaComb::empty(*p).with_note("J_z ≤ J⊥: no finite-frequency absorption"));
    }
    if s <= 0.5 {
        return Ok(DeltaComb::empty(*p).with_note(format!("S = {s}: 2S − 1 ≤ 0, empty comb")));
    }
    let omega_s = (p.jz - p.jperp) * (2.0 * s - 1.0);
    let peaks = vec![
        Peak {
            omega: -omega_s,
            weight: -PI * s,
        },
        Peak {
            omega: omega_s,
            weight: PI * s,
        },
    ];
    Ok(DeltaComb::from_peaks(peaks, *p).with_note(format!("S = {s}")))
}

/// 2πM δ(ω − b) for isotropic exchange with magnetization M in a field b.
pub fn isotropic_comb(p: &DotParams, magnetization: f64, field_b: f64) -> DeltaComb {
    let mut comb = DeltaComb::from_peaks(
        vec![Peak {
            omega: field_b,
            weight: 2.0 * PI * magnetization,
        }],
        *p,
    );
    if !p.is_isotropic() {
        comb.notes
            .push("J_z ≠ J⊥: the single-peak response assumes isotropic exchange".into());
    }
    comb
}
