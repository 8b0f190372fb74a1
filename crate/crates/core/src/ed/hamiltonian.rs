use std::collections::HashMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::basis::{self, State};
use crate::error::{Error, Result};
use crate::model::DotParams;

pub const MAX_LEVELS: usize = 8;

/// Universal Hamiltonian on `levels.len()` orbital levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdModel {
    pub levels: Vec<f64>,
    pub jz: f64,
    pub jperp: f64,
    pub ec: f64,
    pub n0: f64,
    pub mu: f64,
}

impl EdModel {
    /// Levels 0, Δ, 2Δ, … with the couplings of `p`.
    pub fn equally_spaced(num_levels: usize, p: &DotParams) -> Result<Self> {
        let m = EdModel {
            levels: (0..num_levels).map(|a| a as f64 * p.delta).collect(),
            jz: p.jz,
            jperp: p.jperp,
            ec: p.ec,
            n0: p.n0,
            mu: p.mu,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.levels.len();
        if !(1..=MAX_LEVELS).contains(&l) {
            return Err(Error::InvalidParameter {
                name: "levels",
                value: l as f64,
                reason: "exact diagonalization supports 1 to 8 levels",
            });
        }
        let all = self
            .levels
            .iter()
            .chain([&self.jz, &self.jperp, &self.ec, &self.n0, &self.mu]);
        if all.into_iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "model",
                value: f64::NAN,
                reason: "all energies must be finite",
            });
        }
        Ok(())
    }

    /// Mean level spacing, or 1 for a single level.
    pub fn mean_spacing(&self) -> f64 {
        let l = self.levels.len();
        if l < 2 {
            return 1.0;
        }
        let (lo, hi) = self
            .levels
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &e| (a.min(e), b.max(e)));
        if hi > lo {
            (hi - lo) / (l - 1) as f64
        } else {
            1.0
        }
    }

    /// Parameter snapshot attached to combs built from this model.
    pub fn dot_params(&self, temperature: f64) -> DotParams {
        DotParams {
            delta: self.mean_spacing(),
            jz: self.jz,
            jperp: self.jperp,
            ec: self.ec,
            n0: self.n0,
            mu: self.mu,
            temperature,
        }
    }

    /// Diagonal part: Σ ε n + E_c(N − N₀)² − J_z S_z².
    pub fn diagonal_energy(&self, s: State) -> f64 {
        let mut e = 0.0;
        for (a, &eps) in self.levels.iter().enumerate() {
            if s & basis::up_bit(a) != 0 {
                e += eps;
            }
            if s & basis::down_bit(a) != 0 {
                e += eps;
            }
        }
        let n = basis::particle_number(s) as f64;
        let sz = basis::two_sz(s) as f64 / 2.0;
        e + self.ec * (n - self.n0).powi(2) - self.jz * sz * sz
    }
}

#[derive(Debug, Clone)]
pub struct Sector {
    pub n: u32,
    pub two_sz: i32,
    pub states: Vec<State>,
    pub hamiltonian: DMatrix<f64>,
    /// Ascending.
    pub energies: DVector<f64>,
    /// Columns are eigenvectors in the occupation basis.
    pub vectors: DMatrix<f64>,
}

/// ⟨m|S₊|n⟩ with n an eigenstate of sector `from` and m of sector `to`.
#[derive(Debug, Clone)]
pub struct SplusBlock {
    pub from: usize,
    pub to: usize,
    pub elements: DMatrix<f64>,
}

#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub model: EdModel,
    pub sectors: Vec<Sector>,
    pub splus: Vec<SplusBlock>,
}

/// S₊ = Σ_α a†_{α↑}a_{α↓} from one sector's occupation basis to the next.
fn splus_fock(from: &[State], to: &[State], levels: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(to.len(), from.len());
    for (j, &s) in from.iter().enumerate() {
        for a in 0..levels {
            if let Some((sign, t)) = basis::spin_raise(s, a) {
                let i = to.binary_search(&t).expect("S+ stays within the (N, M+2) sector");
                m[(i, j)] += sign;
            }
        }
    }
    m
}

/// Occupation-basis Hamiltonian of every (N, 2S_z) sector, using
/// S_x² + S_y² = ½(S₊S₋ + S₋S₊).
#[allow(clippy::type_complexity)]
fn sector_hamiltonians(
    model: &EdModel,
) -> (Vec<(u32, i32, Vec<State>)>, Vec<DMatrix<f64>>, HashMap<(u32, i32), DMatrix<f64>>) {
    let l = model.num_levels();
    let groups: Vec<(u32, i32, Vec<State>)> = basis::sectors(l)
        .into_iter()
        .map(|((n, m), states)| (n, m, states))
        .collect();
    let index: HashMap<(u32, i32), usize> = groups
        .iter()
        .enumerate()
        .map(|(i, g)| ((g.0, g.1), i))
        .collect();
    let raises: HashMap<(u32, i32), DMatrix<f64>> = groups
        .par_iter()
        .filter_map(|(n, m, states)| {
            let to = index.get(&(*n, m + 2))?;
            Some(((*n, *m), splus_fock(states, &groups[*to].2, l)))
        })
        .collect();
    let hams = groups
        .par_iter()
        .map(|(n, m, states)| {
            let mut h = DMatrix::from_diagonal(&DVector::from_iterator(
                states.len(),
                states.iter().map(|&s| model.diagonal_energy(s)),
            ));
            let half = model.jperp / 2.0;
            if let Some(a) = raises.get(&(*n, m - 2)) {
                h -= (a * a.transpose()) * half;
            }
            if let Some(b) = raises.get(&(*n, *m)) {
                h -= (b.transpose() * b) * half;
            }
            h
        })
        .collect();
    (groups, hams, raises)
}

/// Dense eigendecomposition of every sector and S₊ in the eigenbasis.
pub fn build_and_diagonalize(model: &EdModel) -> Result<EigenSystem> {
    model.validate()?;
    let (groups, hams, raises) = sector_hamiltonians(model);
    let sectors = groups
        .into_par_iter()
        .zip(hams.into_par_iter())
        .map(|((n, two_sz, states), h)| {
            let eig = SymmetricEigen::try_new(h.clone(), f64::EPSILON, 0)
                .ok_or(Error::Eigen { n, two_sz })?;
            let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            let energies = DVector::from_iterator(order.len(), order.iter().map(|&i| eig.eigenvalues[i]));
            let vectors = eig.eigenvectors.select_columns(&order);
            Ok(Sector {
                n,
                two_sz,
                states,
                hamiltonian: h,
                energies,
                vectors,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let index: HashMap<(u32, i32), usize> = sectors
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.n, s.two_sz), i))
        .collect();
    let mut splus: Vec<SplusBlock> = raises
        .into_iter()
        .map(|((n, m), fock)| {
            let from = index[&(n, m)];
            let to = index[&(n, m + 2)];
            let elements = sectors[to].vectors.transpose() * fock * &sectors[from].vectors;
            SplusBlock { from, to, elements }
        })
        .collect();
    splus.sort_by_key(|b| (b.from, b.to));
    Ok(EigenSystem {
        model: model.clone(),
        sectors,
        splus,
    })
}

impl EigenSystem {
    pub fn dimension(&self) -> usize {
        self.sectors.iter().map(|s| s.states.len()).sum()
    }

    /// Grand-canonical probabilities ∝ e^{−β(E − μN)}, per sector.
    pub fn probabilities(&self, temperature: f64) -> Vec<DVector<f64>> {
        let beta = 1.0 / temperature;
        let mu = self.model.mu;
        let omega = |s: &Sector, e: f64| e - mu * s.n as f64;
        let min = self
            .sectors
            .iter()
            .flat_map(|s| s.energies.iter().map(move |&e| omega(s, e)))
            .fold(f64::INFINITY, f64::min);
        let mut probs: Vec<DVector<f64>> = self
            .sectors
            .iter()
            .map(|s| s.energies.map(|e| (-beta * (omega(s, e) - min)).exp()))
            .collect();
        let z: f64 = probs.iter().map(|p| p.sum()).sum();
        for p in &mut probs {
            *p /= z;
        }
        probs
    }

    /// Grand partition function Σ e^{−β(E − μN)}.
    pub fn ln_partition(&self, temperature: f64) -> f64 {
        let beta = 1.0 / temperature;
        let exps: Vec<f64> = self
            .sectors
            .iter()
            .flat_map(|s| {
                let n = s.n as f64;
                s.energies
                    .iter()
                    .map(move |&e| -beta * (e - self.model.mu * n))
            })
            .collect();
        crate::numerics::log_sum_exp(&exps)
    }

    /// Largest relative Frobenius residual of V diag(E) Vᵀ against H.
    pub fn reconstruction_residual(&self) -> f64 {
        self.sectors
            .iter()
            .map(|s| {
                let rebuilt = &s.vectors * DMatrix::from_diagonal(&s.energies) * s.vectors.transpose();
                let norm = s.hamiltonian.norm().max(f64::MIN_POSITIVE);
                (rebuilt - &s.hamiltonian).norm() / norm
            })
            .fold(0.0, f64::max)
    }

    pub fn ground_energy(&self) -> f64 {
        self.sectors
            .iter()
            .map(|s| s.energies[0] - self.model.mu * s.n as f64)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Applies H to every Fock state term by term, with S_x² + S_y² expanded as
/// ½Σ_{αβ}(S₊^α S₋^β + S₋^α S₊^β). Returns the largest amplitude leaking
/// across (N, 2S_z) sectors and the largest deviation from the sector blocks.
pub fn full_space_check(es: &EigenSystem) -> (f64, f64) {
    let model = &es.model;
    let l = model.num_levels();
    let mut leak: f64 = 0.0;
    let mut mismatch: f64 = 0.0;
    for sector in &es.sectors {
        for (j, &s) in sector.states.iter().enumerate() {
            let mut out: HashMap<State, f64> = HashMap::new();
            *out.entry(s).or_default() += model.diagonal_energy(s);
            for a in 0..l {
                for b in 0..l {
                    if let Some((s1, t)) = basis::spin_lower(s, b) {
                        if let Some((s2, u)) = basis::spin_raise(t, a) {
                            *out.entry(u).or_default() -= model.jperp / 2.0 * s1 * s2;
                        }
                    }
                    if let Some((s1, t)) = basis::spin_raise(s, b) {
                        if let Some((s2, u)) = basis::spin_lower(t, a) {
                            *out.entry(u).or_default() -= model.jperp / 2.0 * s1 * s2;
                        }
                    }
                }
            }
            let mut column = DVector::<f64>::zeros(sector.states.len());
            for (u, amp) in out {
                if basis::particle_number(u) != sector.n || basis::two_sz(u) != sector.two_sz {
                    leak = leak.max(amp.abs());
                } else if let Ok(i) = sector.states.binary_search(&u) {
                    column[i] += amp;
                }
            }
            let diff = (column - sector.hamiltonian.column(j)).amax();
            mismatch = mismatch.max(diff);
        }
    }
    (leak, mismatch)
}
