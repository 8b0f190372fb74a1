//! Lehmann spectral combs and the thermal QFI double sum.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::hamiltonian::EigenSystem;
use crate::susceptibility::{DeltaComb, Peak};

/// Pairs with p_m + p_n below this are 0/0 and skipped.
const PROBABILITY_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Channel {
    /// ⟨S₋ S₊⟩ response, the operator pair of Im χ⁺⁻.
    PlusMinus,
    /// Hermitian generator S_x = (S₊ + S₋)/2.
    XX,
}

/// Im χ(ω) = π Σ_{m,n} (p_n − p_m) |⟨m|O|n⟩|² δ(ω − (E_m − E_n)).
pub fn lehmann_comb(es: &EigenSystem, temperature: f64, channel: Channel) -> DeltaComb {
    let probs = es.probabilities(temperature);
    let mut peaks = Vec::new();
    for block in &es.splus {
        let (from, to) = (&es.sectors[block.from], &es.sectors[block.to]);
        let (pf, pt) = (&probs[block.from], &probs[block.to]);
        for n in 0..from.energies.len() {
            for m in 0..to.energies.len() {
                let x2 = block.elements[(m, n)].powi(2);
                if x2 == 0.0 {
                    continue;
                }
                let omega = to.energies[m] - from.energies[n];
                let weight = PI * (pf[n] - pt[m]) * x2;
                match channel {
                    Channel::PlusMinus => peaks.push(Peak { omega, weight }),
                    Channel::XX => {
                        // S_x carries a quarter of |S₊|² in each direction.
                        peaks.push(Peak {
                            omega,
                            weight: weight / 4.0,
                        });
                        peaks.push(Peak {
                            omega: -omega,
                            weight: -weight / 4.0,
                        });
                    }
                }
            }
        }
    }
    let params = es.model.dot_params(temperature);
    DeltaComb::from_peaks(peaks, params)
}

/// 2 Σ_{m,n} (p_m − p_n)²/(p_m + p_n) |⟨m|S_x|n⟩|².
pub fn thermal_qfi(es: &EigenSystem, temperature: f64) -> f64 {
    let probs = es.probabilities(temperature);
    let mut sum = 0.0;
    for block in &es.splus {
        let (pf, pt) = (&probs[block.from], &probs[block.to]);
        for n in 0..pf.len() {
            for m in 0..pt.len() {
                let total = pf[n] + pt[m];
                if total < PROBABILITY_FLOOR {
                    continue;
                }
                // Ordered pairs (m, n) and (n, m), each with |S_x|² = |S₊|²/4.
                sum += (pf[n] - pt[m]).powi(2) / total * block.elements[(m, n)].powi(2);
            }
        }
    }
    sum
}

/// Var(S_x) = Σ_n p_n ⟨n|S_x²|n⟩ (⟨S_x⟩ vanishes sector by sector).
pub fn variance_sx(es: &EigenSystem, temperature: f64) -> f64 {
    let probs = es.probabilities(temperature);
    let mut sum = 0.0;
    for block in &es.splus {
        let (pf, pt) = (&probs[block.from], &probs[block.to]);
        for n in 0..pf.len() {
            for m in 0..pt.len() {
                sum += (pf[n] + pt[m]) * block.elements[(m, n)].powi(2) / 4.0;
            }
        }
    }
    sum
}
