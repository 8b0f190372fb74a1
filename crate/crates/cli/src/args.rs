use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qdot", version, about = "Spin susceptibility and QFI of metallic quantum dots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Im χ⁺⁻(ω) curves or delta combs, optionally swept over one parameter
    Chi(ChiArgs),
    /// Quantum Fisher information along a parameter sweep
    Qfi(QfiArgs),
    /// Preset curve families for figures 1 to 5
    Figures(FigureArgs),
    /// Exact-diagonalization identity checks on random small dots
    Oracle(OracleArgs),
    /// Convert an energy between Δ units, meV and GHz
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Ising,
    Aniso,
    LowT,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Paper,
    Hermitian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpinModeArg {
    Continuous,
    Discrete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    #[value(name = "delta")]
    Delta,
    #[value(name = "meV", alias = "mev")]
    MeV,
    #[value(name = "GHz", alias = "ghz")]
    GHz,
}

/// Physical parameters. Energies are read in `--unit`.
#[derive(Debug, Clone, Args)]
pub struct PhysArgs {
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub jz: Option<f64>,
    #[arg(long)]
    pub jperp: Option<f64>,
    #[arg(long)]
    pub ec: Option<f64>,
    #[arg(long)]
    pub n0: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long = "temp")]
    pub temp: Option<f64>,
    /// key = value file; flags override its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = UnitArg::Delta)]
    pub unit: UnitArg,
    /// Level spacing in meV, needed for meV and GHz
    #[arg(long = "delta-mev")]
    pub delta_mev: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; several documents get a _<name> suffix
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Parameter to sweep (delta, jz, jperp, ec, n0, mu, temp)
    #[arg(long, requires = "range")]
    pub sweep: Option<String>,
    /// start:stop:n
    #[arg(long, requires = "sweep")]
    pub range: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Defaults to ising when J⊥ = 0 and aniso otherwise
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    #[arg(long = "spin-mode", value_enum, default_value_t = SpinModeArg::Continuous)]
    pub spin_mode: SpinModeArg,
    #[arg(long, value_enum, default_value_t = ParityArg::Even)]
    pub parity: ParityArg,
    /// Magnetization M of the isotropic response 2πMδ(ω − b)
    #[arg(long, default_value_t = 1.0)]
    pub magnetization: f64,
    /// Zeeman field b of the isotropic response
    #[arg(long, default_value_t = 0.0)]
    pub field: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ChiArgs {
    #[command(flatten)]
    pub phys: PhysArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long = "omega-min")]
    pub omega_min: Option<f64>,
    #[arg(long = "omega-max")]
    pub omega_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct QfiArgs {
    #[command(flatten)]
    pub phys: PhysArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, value_enum, default_value_t = ConventionArg::Paper)]
    pub convention: ConventionArg,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// Figure number; all five when omitted
    #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
    pub figure: Option<u8>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum, default_value_t = ConventionArg::Paper)]
    pub convention: ConventionArg,
    #[arg(long = "spin-mode", value_enum, default_value_t = SpinModeArg::Continuous)]
    pub spin_mode: SpinModeArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Directory for one file per curve; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
    pub levels: u64,
    /// Number of random models
    #[arg(long, default_value_t = 20)]
    pub seeds: usize,
    /// First seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed temperature in Δ; drawn per seed from [0.2, 5) when omitted
    #[arg(long = "temp")]
    pub temp: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ConvertArgs {
    #[arg(allow_negative_numbers = true)]
    pub value: f64,
    /// Unit of the input value
    #[arg(long, value_enum, default_value_t = UnitArg::Delta)]
    pub unit: UnitArg,
    #[arg(long, value_enum)]
    pub to: UnitArg,
    #[arg(long = "delta-mev", default_value_t = 1.0)]
    pub delta_mev: f64,
}
