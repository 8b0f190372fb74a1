//! Im χ⁺⁻(ω) in every supported regime.

pub mod aniso;
pub mod comb;
pub mod curve;
pub mod ising;

pub use aniso::{aniso_im_chi, aniso_im_chi_asymptotic, aniso_im_chi_slope0, AnisoSusceptibility};
pub use comb::{
    isotropic_comb, low_t_delta_comb, low_t_ground_state_comb, merge_peaks, DeltaComb, Peak,
    EPS_MERGE,
};
pub use curve::{
    analyze_curve, analyze_samples, aniso_curve, default_grid, default_omega_max, ising_curve,
    linear_grid, CurveAnalysis, SpectralCurve, DEFAULT_POINTS,
};
pub use ising::{ising_im_chi, ising_ln_im_chi, ising_peak_estimate, ising_static_chi};
