//! Parameter sweeps, figure presets and oracle batches.
//!
//! Points are evaluated in parallel and gathered by index, so output order
//! never depends on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ed::{oracle_report, random_model, random_temperature, OracleReport};
use crate::error::{Error, Result};
use crate::io::{fmt17, CombData, CombDocument, Document, RangeSpec, SeriesData, SeriesDocument};
use crate::model::{classify_regime, DotParams, Parity, RegimeReport, SpinMode, PARAM_NAMES};
use crate::partition::DEFAULT_N_CUT;
use crate::qfi::{qfi_aniso, qfi_from_comb, qfi_ising, qfi_low_t_closed, Convention, QfiResult};
use crate::susceptibility::{
    aniso_curve, analyze_curve, default_omega_max, ising_curve, isotropic_comb, linear_grid,
    low_t_delta_comb, DeltaComb, SpectralCurve, DEFAULT_POINTS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ModelKind {
    #[default]
    Ising,
    Aniso,
    LowT,
    Isotropic,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Ising => "ising",
            ModelKind::Aniso => "aniso",
            ModelKind::LowT => "low-t",
            ModelKind::Isotropic => "isotropic",
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ising" => Ok(ModelKind::Ising),
            "aniso" => Ok(ModelKind::Aniso),
            "low-t" | "lowt" => Ok(ModelKind::LowT),
            "isotropic" => Ok(ModelKind::Isotropic),
            _ => Err(format!(
                "unknown model '{s}' (expected ising|aniso|low-t|isotropic)"
            )),
        }
    }
}

/// The swept parameter and its values.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: &'static str,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn from_range(name: &str, range: RangeSpec) -> Result<Axis> {
        Axis::from_values(name, range.values())
    }

    pub fn from_values(name: &str, values: Vec<f64>) -> Result<Axis> {
        let name = PARAM_NAMES
            .iter()
            .copied()
            .find(|&n| n == name || (n == "temp" && name == "temperature"))
            .ok_or_else(|| Error::Domain(format!("'{name}' is not a sweepable parameter")))?;
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("sweep values must be finite and non-empty".into()));
        }
        Ok(Axis { name, values })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub model: ModelKind,
    pub fixed: DotParams,
    pub axis: Option<Axis>,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub points: usize,
    pub convention: Convention,
    pub spin_mode: SpinMode,
    pub parity: Parity,
    /// Magnetization and field of the isotropic single-peak response.
    pub magnetization: f64,
    pub field: f64,
    pub n_cut: usize,
}

impl SweepSpec {
    pub fn new(model: ModelKind, fixed: DotParams) -> Self {
        SweepSpec {
            model,
            fixed,
            axis: None,
            omega_min: None,
            omega_max: None,
            points: DEFAULT_POINTS,
            convention: Convention::Paper,
            spin_mode: SpinMode::Continuous,
            parity: Parity::Even,
            magnetization: 1.0,
            field: 0.0,
            n_cut: DEFAULT_N_CUT,
        }
    }

    pub fn with_axis(mut self, axis: Axis) -> Self {
        self.axis = Some(axis);
        self
    }

    /// Every parameter point in sweep order, paired with the swept value.
    pub fn points_list(&self) -> Result<Vec<(Option<f64>, DotParams)>> {
        let Some(axis) = &self.axis else {
            self.fixed.validate()?;
            return Ok(vec![(None, self.fixed)]);
        };
        axis.values
            .iter()
            .map(|&v| {
                let p = self.fixed.with(axis.name, v).expect("axis names are checked");
                p.validate().map_err(|e| e.at(axis.name, v))?;
                Ok((Some(v), p))
            })
            .collect()
    }

    fn base_meta(&self) -> BTreeMap<String, String> {
        let mut meta = BTreeMap::new();
        meta.insert("model".into(), self.model.name().into());
        if let Some(axis) = &self.axis {
            meta.insert("sweep".into(), axis.name.into());
        }
        meta
    }
}

/// One emitted document with a short name used to build file names.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Series { name: String, doc: SeriesDocument },
    Comb { name: String, doc: CombDocument },
}

impl Output {
    pub fn name(&self) -> &str {
        match self {
            Output::Series { name, .. } | Output::Comb { name, .. } => name,
        }
    }

    fn renamed(self, prefix: &str) -> Self {
        match self {
            Output::Series { name, doc } => Output::Series {
                name: format!("{prefix}_{name}"),
                doc,
            },
            Output::Comb { name, doc } => Output::Comb {
                name: format!("{prefix}_{name}"),
                doc,
            },
        }
    }
}

fn series_doc(params: DotParams, data: SeriesData) -> SeriesDocument {
    Document {
        params,
        regime: classify_regime(&params),
        data,
    }
}

fn comb_doc(comb: DeltaComb, meta: BTreeMap<String, String>) -> CombDocument {
    Document {
        params: comb.params,
        regime: classify_regime(&comb.params),
        data: CombData {
            peaks: comb.peaks,
            notes: comb.notes,
            meta,
        },
    }
}

fn curve_for(spec: &SweepSpec, p: &DotParams) -> Result<SpectralCurve> {
    let lo = spec.omega_min.unwrap_or(0.0);
    let hi = spec.omega_max.unwrap_or_else(|| default_omega_max(p));
    if !(lo < hi) || spec.points < 2 {
        return Err(Error::Domain(format!(
            "frequency window [{lo}, {hi}] with {} points is empty",
            spec.points
        )));
    }
    let omegas = linear_grid(lo, hi, spec.points);
    match spec.model {
        ModelKind::Ising => ising_curve(p, &omegas),
        ModelKind::Aniso => aniso_curve(p, &omegas),
        _ => unreachable!("combs are handled separately"),
    }
}

fn chi_point(spec: &SweepSpec, p: &DotParams) -> Result<(SpectralCurve, Option<DeltaComb>)> {
    match spec.model {
        ModelKind::Ising | ModelKind::Aniso => Ok((curve_for(spec, p)?, None)),
        ModelKind::LowT => {
            p.validate()?;
            let comb = low_t_delta_comb(p, spec.n_cut)?;
            Ok((empty_curve(p), Some(comb)))
        }
        ModelKind::Isotropic => {
            p.validate()?;
            let comb = isotropic_comb(p, spec.magnetization, spec.field);
            Ok((empty_curve(p), Some(comb)))
        }
    }
}

fn empty_curve(p: &DotParams) -> SpectralCurve {
    SpectralCurve {
        omegas: Vec::new(),
        values: Vec::new(),
        params: *p,
        regime: classify_regime(p),
        raw_formula_positive: true,
    }
}

/// One Im χ document per sweep point: a sampled curve for the Ising and
/// anisotropic models, a delta comb for the low-temperature and isotropic ones.
pub fn run_chi(spec: &SweepSpec) -> Result<Vec<Output>> {
    let points = spec.points_list()?;
    let axis_name = spec.axis.as_ref().map(|a| a.name).unwrap_or("point");
    let results: Vec<_> = points
        .par_iter()
        .map(|(v, p)| {
            chi_point(spec, p).map_err(|e| match v {
                Some(v) => e.at(axis_name, *v),
                None => e,
            })
        })
        .collect::<Result<_>>()?;

    let many = points.len() > 1;
    let outputs = points
        .iter()
        .zip(results)
        .enumerate()
        .map(|(i, ((v, p), (curve, comb)))| {
            let name = if many {
                format!("{axis_name}_{i:03}")
            } else {
                "chi".to_string()
            };
            let mut meta = spec.base_meta();
            if let Some(v) = v {
                meta.insert("sweep_value".into(), fmt17(*v));
            }
            if spec.model == ModelKind::LowT {
                meta.insert("n_cut".into(), spec.n_cut.to_string());
            }
            match comb {
                Some(comb) => Output::Comb {
                    name,
                    doc: comb_doc(comb, meta),
                },
                None => {
                    meta.insert(
                        "raw_formula_positive".into(),
                        curve.raw_formula_positive.to_string(),
                    );
                    if let Ok(a) = analyze_curve(&curve) {
                        meta.insert("peak_omega".into(), fmt17(a.peak_omega));
                        meta.insert("peak_value".into(), fmt17(a.peak_value));
                        meta.insert("fwhm".into(), fmt17(a.fwhm));
                    }
                    Output::Series {
                        name,
                        doc: series_doc(
                            *p,
                            SeriesData {
                                x_label: "omega".into(),
                                y_label: "im_chi".into(),
                                x: curve.omegas,
                                y: curve.values,
                                meta,
                            },
                        ),
                    }
                }
            }
        })
        .collect();
    Ok(outputs)
}

fn qfi_point(spec: &SweepSpec, p: &DotParams) -> Result<QfiResult> {
    let r = match spec.model {
        ModelKind::Ising => qfi_ising(p)?,
        ModelKind::Aniso => qfi_aniso(p)?,
        ModelKind::LowT => qfi_low_t_closed(p, spec.spin_mode, spec.parity)?,
        ModelKind::Isotropic => {
            qfi_from_comb(&isotropic_comb(p, spec.magnetization, spec.field), p)?
        }
    };
    Ok(r.in_convention(spec.convention))
}

/// QFI along the sweep axis as a single series (swept value, qfi).
pub fn run_qfi(spec: &SweepSpec) -> Result<Output> {
    let points = spec.points_list()?;
    let axis_name = spec.axis.as_ref().map(|a| a.name).unwrap_or("temp");
    let values = points
        .par_iter()
        .map(|(v, p)| {
            qfi_point(spec, p).map_err(|e| match v {
                Some(v) => e.at(axis_name, *v),
                None => e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let x = points
        .iter()
        .map(|(v, p)| v.unwrap_or_else(|| p.get(axis_name).expect("known name")))
        .collect();
    let mut meta = spec.base_meta();
    meta.insert(
        "convention".into(),
        match spec.convention {
            Convention::Paper => "paper".into(),
            Convention::Hermitian => "hermitian".into(),
        },
    );
    if spec.model == ModelKind::LowT {
        meta.insert(
            "spin_mode".into(),
            match spec.spin_mode {
                SpinMode::Continuous => "continuous".into(),
                SpinMode::Discrete => "discrete".into(),
            },
        );
        meta.insert("parity".into(), format!("{:?}", spec.parity).to_lowercase());
    }
    let max_err = values.iter().map(|r| r.integral_error).fold(0.0, f64::max);
    meta.insert("max_integral_error".into(), fmt17(max_err));
    if let Some(r) = values.first() {
        meta.insert("method".into(), format!("{:?}", r.method));
    }
    Ok(Output::Series {
        name: "qfi".into(),
        doc: Document {
            params: points[0].1,
            regime: sweep_regime(&points),
            data: SeriesData {
                x_label: axis_name.to_string(),
                y_label: "qfi".into(),
                x,
                y: values.into_iter().map(|r| r.value).collect(),
                meta,
            },
        },
    })
}

/// Regime of the first point with validity flags and notes combined over
/// the whole sweep.
fn sweep_regime(points: &[(Option<f64>, DotParams)]) -> RegimeReport {
    let mut regime = classify_regime(&points[0].1);
    for (_, p) in &points[1..] {
        let r = classify_regime(p);
        regime.high_t_ising_valid &= r.high_t_ising_valid;
        regime.high_t_aniso_valid &= r.high_t_aniso_valid;
        regime.low_t_valid &= r.low_t_valid;
        for note in r.notes {
            if !regime.notes.contains(&note) {
                regime.notes.push(note);
            }
        }
    }
    regime
}

fn axis(name: &str, values: &[f64]) -> Axis {
    Axis::from_values(name, values.to_vec()).expect("preset axes are valid")
}

fn params(jz: f64, jperp: f64, temperature: f64) -> DotParams {
    DotParams {
        jz,
        jperp,
        temperature,
        ..DotParams::default()
    }
}

/// A named QFI family: one series per value of `family`.
fn qfi_family(
    prefix: &str,
    base: SweepSpec,
    family: (&str, &[f64]),
    sweep: Axis,
) -> Result<Vec<Output>> {
    family
        .1
        .iter()
        .map(|&f| {
            let mut spec = base.clone();
            spec.fixed = spec.fixed.with(family.0, f).expect("preset names are valid");
            spec.axis = Some(sweep.clone());
            let out = run_qfi(&spec)?;
            Ok(out.renamed(&format!("{prefix}_{}{}", family.0, fmt_short(f))))
        })
        .collect()
}

fn fmt_short(v: f64) -> String {
    format!("{v}")
}

pub const FIG1_TEMPS: [f64; 4] = [5.0, 10.0, 20.0, 40.0];
pub const FIG1_JZ: [f64; 5] = [0.05, 0.1, 0.3, 0.5, 0.8];
pub const FIG3_JZ: [f64; 4] = [0.2, 0.4, 0.6, 0.9];
pub const FIG3_JPERP: f64 = 0.98;

/// Data behind figure `n` (1 to 5). `template` supplies the grid size, the
/// convention and the spin mode; physical parameters come from the preset.
pub fn figure(n: u8, template: &SweepSpec) -> Result<Vec<Output>> {
    let with = |model: ModelKind, p: DotParams| SweepSpec {
        model,
        fixed: p,
        axis: None,
        ..template.clone()
    };
    let chi = |prefix: &str, spec: SweepSpec| -> Result<Vec<Output>> {
        Ok(run_chi(&spec)?
            .into_iter()
            .map(|o| o.renamed(prefix))
            .collect())
    };
    match n {
        1 => {
            let mut out = chi(
                "fig1_left",
                with(ModelKind::Ising, params(0.1, 0.0, 20.0)).with_axis(axis("temp", &FIG1_TEMPS)),
            )?;
            out.extend(chi(
                "fig1_right",
                with(ModelKind::Ising, params(0.1, 0.0, 20.0)).with_axis(axis("jz", &FIG1_JZ)),
            )?);
            Ok(out)
        }
        2 => {
            let mut out = qfi_family(
                "fig2_left",
                with(ModelKind::Ising, params(0.1, 0.0, 20.0)),
                ("jz", &[0.05, 0.1, 0.3, 0.5]),
                axis("temp", &linear_grid(1.0, 50.0, 50)),
            )?;
            out.extend(qfi_family(
                "fig2_right",
                with(ModelKind::Ising, params(0.1, 0.0, 20.0)),
                ("temp", &FIG1_TEMPS),
                axis("jz", &linear_grid(0.05, 0.9, 18)),
            )?);
            Ok(out)
        }
        3 => {
            let mut out = chi(
                "fig3_left",
                with(ModelKind::Aniso, params(0.4, FIG3_JPERP, 5.0))
                    .with_axis(axis("temp", &FIG1_TEMPS)),
            )?;
            out.extend(chi(
                "fig3_right",
                with(ModelKind::Aniso, params(0.4, FIG3_JPERP, 5.0)).with_axis(axis("jz", &FIG3_JZ)),
            )?);
            Ok(out)
        }
        4 => {
            let mut out = qfi_family(
                "fig4_left",
                with(ModelKind::Aniso, params(0.4, FIG3_JPERP, 5.0)),
                ("temp", &FIG1_TEMPS),
                axis("jz", &linear_grid(0.2, 0.95, 16)),
            )?;
            out.extend(qfi_family(
                "fig4_right",
                with(ModelKind::Aniso, params(0.4, FIG3_JPERP, 5.0)),
                ("jz", &FIG3_JZ),
                axis("temp", &linear_grid(5.0, 40.0, 36)),
            )?);
            Ok(out)
        }
        5 => {
            let mut out = qfi_family(
                "fig5_left",
                with(ModelKind::LowT, params(0.9, 0.5, 0.05)),
                ("temp", &[0.02, 0.05, 0.1, 0.2]),
                axis("jperp", &linear_grid(0.2, 0.9, 36)),
            )?;
            out.extend(qfi_family(
                "fig5_right",
                with(ModelKind::LowT, params(0.9, 0.5, 0.05)),
                ("jperp", &[0.5, 0.6, 0.7, 0.8]),
                axis("temp", &linear_grid(0.01, 0.2, 39)),
            )?);
            Ok(out)
        }
        _ => Err(Error::Domain(format!("figure {n} does not exist (expected 1 to 5)"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub levels: usize,
    pub seeds: Vec<u64>,
    pub runs: Vec<OracleReport>,
    pub all_passed: bool,
}

/// Oracle reports on `seeds` random models starting at `first_seed`. The
/// temperature is drawn per seed unless given.
pub fn run_oracle(
    levels: usize,
    seeds: usize,
    first_seed: u64,
    temperature: Option<f64>,
) -> Result<OracleSummary> {
    if !(1..=crate::ed::MAX_LEVELS).contains(&levels) {
        return Err(Error::Domain(format!(
            "levels = {levels} outside 1..={}",
            crate::ed::MAX_LEVELS
        )));
    }
    if let Some(t) = temperature {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "temperature",
                value: t,
                reason: "temperature must be positive",
            });
        }
    }
    let seed_list: Vec<u64> = (0..seeds as u64).map(|i| first_seed.wrapping_add(i)).collect();
    let runs = seed_list
        .par_iter()
        .map(|&s| {
            let t = temperature.unwrap_or_else(|| random_temperature(s));
            oracle_report(&random_model(levels, s), t)
        })
        .collect::<Result<Vec<_>>>()?;
    let all_passed = runs.iter().all(OracleReport::all_passed);
    Ok(OracleSummary {
        levels,
        seeds: seed_list,
        runs,
        all_passed,
    })
}

pub fn oracle_to_csv(summary: &OracleSummary) -> String {
    let mut s = format!(
        "# levels = {}\n# all_passed = {}\nseed,temperature,qfi_double_sum,qfi_comb,variance_sx,max_residual_ratio,passed\n",
        summary.levels, summary.all_passed
    );
    for (seed, r) in summary.seeds.iter().zip(&summary.runs) {
        let worst = r
            .checks
            .iter()
            .map(|c| c.residual / c.tolerance)
            .fold(0.0, f64::max);
        s.push_str(&format!(
            "{seed},{},{},{},{},{},{}\n",
            fmt17(r.temperature),
            fmt17(r.qfi_double_sum),
            fmt17(r.qfi_comb),
            fmt17(r.variance_sx),
            fmt17(worst),
            u8::from(r.all_passed())
        ));
    }
    s
}
