//! Dynamic transverse spin susceptibility and quantum Fisher information
//! of metallic quantum dots described by the universal Hamiltonian
//!
//! ```text
//! H = Σ ε_α a†_ασ a_ασ + E_c (n̂ − N₀)² − J⊥ (S_x² + S_y²) − J_z S_z²
//! ```
//!
//! Energies are measured in units of the mean level spacing Δ with
//! k_B = ħ = 1 unless stated otherwise.
//!
//! * [`numerics`]: quadrature, ladder sums and special functions.
//! * [`model`]: parameters, regime classification, ground-state spin.
//! * [`partition`]: high- and low-temperature partition functions.
//! * [`susceptibility`]: Im χ⁺⁻ for Ising, anisotropic, low-temperature and
//!   isotropic exchange, plus curve analysis.
//! * [`qfi`]: quantum Fisher information from curves, combs and closed forms.
//! * [`ed`]: exact diagonalization of small dots, used as an oracle.
//! * [`io`] and [`sweep`]: file formats and parameter sweeps behind the CLI.

// Negated float comparisons are deliberate: they reject NaN alongside bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ed;
pub mod error;
pub mod io;
pub mod model;
pub mod numerics;
pub mod partition;
pub mod qfi;
pub mod susceptibility;
pub mod sweep;

pub use error::{Error, Result};



pub use model::{classify_regime, ground_state_spin, DotParams, Parity, RegimeReport, SpinMode, Unit};
pub use qfi::{
    qfi_aniso, qfi_from_comb, qfi_from_curve, qfi_ising, qfi_low_t_closed, Convention, QfiResult,
};
pub use susceptibility::{
    aniso_im_chi, ising_im_chi, ising_static_chi, low_t_delta_comb, low_t_ground_state_comb,
    DeltaComb, Peak,
};
