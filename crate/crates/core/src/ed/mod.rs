//! Exact diagonalization of the universal Hamiltonian on a few levels.
//!
//! Used as an oracle: the thermal QFI double sum, the Lehmann combs and the
//! sector structure are checked against each other and against the comb
//! QFI formula.

pub mod basis;
pub mod hamiltonian;
pub mod lehmann;
pub mod report;

pub use hamiltonian::{build_and_diagonalize, EdModel, EigenSystem, Sector, SplusBlock, MAX_LEVELS};
pub use lehmann::{lehmann_comb, thermal_qfi, variance_sx, Channel};
pub use report::{oracle_report, oracle_report_for, random_model, random_temperature, Check, OracleReport};
