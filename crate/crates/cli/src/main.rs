mod args;
mod emit;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::Parser;

use args::{
    ChiArgs, Cli, Command, ConventionArg, ConvertArgs, FigureArgs, ModelArg, ModelArgs, OracleArgs,
    ParityArg, PhysArgs, QfiArgs, SpinModeArg, SweepArgs, UnitArg,
};
use qdot::io::{parse_config, parse_number, parse_param_name, parse_range, to_json, write_output};
use qdot::model::convert_units;
use qdot::sweep::{self, Axis, ModelKind, SweepSpec};
use qdot::{Convention, DotParams, Parity, SpinMode, Unit};

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_ORACLE: u8 = 3;

enum Failure {
    Usage(String),
    Numerical(String),
    Oracle,
}

impl From<qdot::Error> for Failure {
    fn from(e: qdot::Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

type Run<T = ()> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Chi(a) => chi(a),
        Command::Qfi(a) => qfi(a),
        Command::Figures(a) => figures(a),
        Command::Oracle(a) => oracle(a),
        Command::Convert(a) => convert(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NUMERICAL)
        }
        Err(Failure::Oracle) => {
            eprintln!("error: oracle checks failed");
            ExitCode::from(EXIT_ORACLE)
        }
    }
}

fn unit_of(u: UnitArg) -> Unit {
    match u {
        UnitArg::Delta => Unit::Delta,
        UnitArg::MeV => Unit::MeV,
        UnitArg::GHz => Unit::GHz,
    }
}

/// Conversion between the user's unit and Δ units.
#[derive(Debug, Clone, Copy)]
pub struct Units {
    pub unit: Unit,
    pub delta_mev: f64,
}

impl Units {
    fn to_delta(self, v: f64) -> Run<f64> {
        Ok(convert_units(v, self.unit, Unit::Delta, self.delta_mev)?)
    }

    pub fn from_delta(self, v: f64) -> f64 {
        convert_units(v, Unit::Delta, self.unit, self.delta_mev).unwrap_or(f64::NAN)
    }
}

pub fn is_energy(name: &str) -> bool {
    matches!(name, "delta" | "jz" | "jperp" | "ec" | "mu" | "temp" | "omega")
}

const GRID_KEYS: [&str; 3] = ["omega_min", "omega_max", "points"];

struct Resolved {
    params: DotParams,
    units: Units,
    /// Grid entries from the config file.
    grid: BTreeMap<String, String>,
}

fn resolve(phys: &PhysArgs) -> Run<Resolved> {
    let unit = unit_of(phys.unit);
    let delta_mev = match (unit, phys.delta_mev) {
        (_, Some(d)) if !(d > 0.0 && d.is_finite()) => {
            return Err(usage(format!("--delta-mev must be positive, got {d}")))
        }
        (_, Some(d)) => d,
        (Unit::Delta, None) => 1.0,
        (_, None) => return Err(usage(format!("--unit {unit} needs --delta-mev"))),
    };
    let units = Units { unit, delta_mev };

    let mut file = BTreeMap::new();
    let mut grid = BTreeMap::new();
    if let Some(path) = &phys.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let entries = parse_config(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        for (k, v) in entries {
            if GRID_KEYS.contains(&k.as_str()) {
                grid.insert(k, v);
                continue;
            }
            let name = parse_param_name(&k).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            file.insert(name, parse_number(&v)?);
        }
    }
    let flags = [
        ("delta", phys.delta),
        ("jz", phys.jz),
        ("jperp", phys.jperp),
        ("ec", phys.ec),
        ("n0", phys.n0),
        ("mu", phys.mu),
        ("temp", phys.temp),
    ];
    // Defaults are 1 Δ; express them in the input unit before flags apply.
    let mut p = DotParams::default();
    p.delta = units.from_delta(p.delta);
    p.temperature = units.from_delta(p.temperature);
    for (name, flag) in flags {
        let v = flag.or_else(|| file.get(name).copied());
        if let Some(v) = v {
            if !v.is_finite() {
                return Err(usage(format!("--{name} must be finite")));
            }
            p = p.with(name, v).expect("known name");
        }
    }
    for name in ["delta", "jz", "jperp", "ec", "mu", "temp"] {
        let v = units.to_delta(p.get(name).expect("known name"))?;
        p = p.with(name, v).expect("known name");
    }
    p.validate()?;
    Ok(Resolved {
        params: p,
        units,
        grid,
    })
}

fn grid_value(r: &Resolved, flag: Option<f64>, key: &str) -> Run<Option<f64>> {
    let v = match (flag, r.grid.get(key)) {
        (Some(v), _) => Some(v),
        (None, Some(s)) => Some(parse_number(s)?),
        (None, None) => None,
    };
    v.map(|v| r.units.to_delta(v)).transpose()
}

fn model_kind(m: &ModelArgs, p: &DotParams) -> ModelKind {
    match m.model {
        Some(ModelArg::Ising) => ModelKind::Ising,
        Some(ModelArg::Aniso) => ModelKind::Aniso,
        Some(ModelArg::LowT) => ModelKind::LowT,
        Some(ModelArg::Isotropic) => ModelKind::Isotropic,
        None if p.jperp == 0.0 => ModelKind::Ising,
        None => ModelKind::Aniso,
    }
}

fn spin_mode(s: SpinModeArg) -> SpinMode {
    match s {
        SpinModeArg::Continuous => SpinMode::Continuous,
        SpinModeArg::Discrete => SpinMode::Discrete,
    }
}

fn convention(c: ConventionArg) -> Convention {
    match c {
        ConventionArg::Paper => Convention::Paper,
        ConventionArg::Hermitian => Convention::Hermitian,
    }
}

fn build_spec(r: &Resolved, m: &ModelArgs, s: &SweepArgs) -> Run<SweepSpec> {
    let mut spec = SweepSpec::new(model_kind(m, &r.params), r.params);
    spec.spin_mode = spin_mode(m.spin_mode);
    spec.parity = match m.parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    };
    spec.magnetization = m.magnetization;
    spec.field = r.units.to_delta(m.field)?;
    if let (Some(name), Some(range)) = (&s.sweep, &s.range) {
        let name = parse_param_name(name)?;
        let range = parse_range(range)?;
        let values = range
            .values()
            .into_iter()
            .map(|v| if is_energy(name) { r.units.to_delta(v) } else { Ok(v) })
            .collect::<Run<Vec<f64>>>()?;
        spec.axis = Some(Axis::from_values(name, values)?);
    }
    Ok(spec)
}

fn chi(a: ChiArgs) -> Run {
    let r = resolve(&a.phys)?;
    let mut spec = build_spec(&r, &a.model, &a.sweep)?;
    spec.omega_min = grid_value(&r, a.omega_min, "omega_min")?;
    spec.omega_max = grid_value(&r, a.omega_max, "omega_max")?;
    let points = match (a.points, r.grid.get("points")) {
        (Some(n), _) => Some(n),
        (None, Some(s)) => Some(
            s.parse::<usize>()
                .map_err(|_| usage(format!("points = '{s}' is not a count")))?,
        ),
        (None, None) => None,
    };
    if let Some(n) = points {
        if n < 2 {
            return Err(usage("--points must be at least 2"));
        }
        spec.points = n;
    }
    let outputs = sweep::run_chi(&spec)?;
    emit::emit(&outputs, r.units, a.out.format, a.out.out.as_deref(), false)
}

fn qfi(a: QfiArgs) -> Run {
    let r = resolve(&a.phys)?;
    let mut spec = build_spec(&r, &a.model, &a.sweep)?;
    spec.convention = convention(a.convention);
    let output = sweep::run_qfi(&spec)?;
    emit::emit(&[output], r.units, a.out.format, a.out.out.as_deref(), false)
}

fn figures(a: FigureArgs) -> Run {
    let mut template = SweepSpec::new(ModelKind::Ising, DotParams::default());
    template.convention = convention(a.convention);
    template.spin_mode = spin_mode(a.spin_mode);
    if let Some(n) = a.points {
        if n < 2 {
            return Err(usage("--points must be at least 2"));
        }
        template.points = n;
    }
    let numbers: Vec<u8> = match a.figure {
        Some(n) => vec![n],
        None => (1..=5).collect(),
    };
    let mut outputs = Vec::new();
    for n in numbers {
        outputs.extend(sweep::figure(n, &template)?);
    }
    let units = Units {
        unit: Unit::Delta,
        delta_mev: 1.0,
    };
    emit::emit(&outputs, units, a.format, a.out.as_deref(), true)
}

fn oracle(a: OracleArgs) -> Run {
    let summary = sweep::run_oracle(a.levels as usize, a.seeds, a.seed, a.temp)?;
    let text = match a.format {
        args::Format::Json => to_json(&summary)?,
        args::Format::Csv => sweep::oracle_to_csv(&summary),
    };
    write_output(a.out.as_deref(), &text)?;
    if summary.all_passed {
        Ok(())
    } else {
        Err(Failure::Oracle)
    }
}

fn convert(a: ConvertArgs) -> Run {
    if !a.value.is_finite() {
        return Err(usage("value must be finite"));
    }
    let v = convert_units(a.value, unit_of(a.unit), unit_of(a.to), a.delta_mev)?;
    write_output(None, &format!("{v}\n"))?;
    Ok(())
}
