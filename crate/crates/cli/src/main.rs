use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "infogeo", version, about = "Entropic geometry of discrete distributions and qubit measurements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Entropies, pairwise mutual information and requested conditional quantities.
    Measures(MeasuresArgs),
    /// Distance matrix, areas, volumes, n-volume and surface of a distribution.
    Geometry(GeometryArgs),
    /// Settings-averaged surface, volume and reactivity of a qubit state.
    Quantum(QuantumArgs),
    /// Reactivity sweep over cos α |0…0⟩ + sin α |1…1⟩ as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// Output file (default: standard output).
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Absolute tolerance on Σp = 1 when ingesting distributions.
    #[arg(long, default_value_t = infogeo::dist::NORMALIZATION_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct MeasuresArgs {
    /// Distribution JSON, or sample CSV when the path ends in `.csv`.
    #[arg(long)]
    pub input: PathBuf,

    /// Comma-separated variable names to restrict the report to.
    #[arg(long)]
    pub subset: Option<String>,

    /// Extra quantity: `X|Z` for H(X|Z), `X;Y|Z` for I(X;Y|Z). Repeatable;
    /// each side is a comma-separated list of names.
    #[arg(long = "conditional")]
    pub conditionals: Vec<String>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// Distribution JSON, or sample CSV when the path ends in `.csv`.
    #[arg(long)]
    pub input: PathBuf,

    /// Comma-separated variable names (default: all variables).
    #[arg(long)]
    pub subset: Option<String>,

    /// Require tetrahedron volumes (needs at least 4 variables).
    #[arg(long)]
    pub volume: bool,

    /// Heron radicand clamp window.
    #[arg(long, default_value_t = infogeo::geometry::HERON_CLAMP)]
    pub heron_clamp: f64,

    /// Volume below which reactivity is reported as DIVERGENT.
    #[arg(long, default_value_t = infogeo::geometry::DIVERGENCE_THRESHOLD)]
    pub divergence_threshold: f64,

    /// Facet combination for the surface: `sum` or `mean`.
    #[arg(long, default_value = "sum")]
    pub surface_mode: String,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args, Clone)]
pub struct SettingArgs {
    /// Number of measurement settings.
    #[arg(long = "settings", default_value_t = 1000)]
    pub count: usize,

    /// Setting scheme: `uniform_sphere` or `grid`.
    #[arg(long, default_value = "uniform_sphere")]
    pub scheme: String,

    /// Seed for setting generation.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Grid polar divisions.
    #[arg(long)]
    pub n_theta: Option<usize>,

    /// Grid azimuthal divisions.
    #[arg(long)]
    pub n_phi: Option<usize>,

    /// Setting config JSON; overrides the individual setting flags.
    #[arg(long)]
    pub settings_config: Option<PathBuf>,

    /// Volume below which reactivity is reported as DIVERGENT.
    #[arg(long, default_value_t = infogeo::geometry::DIVERGENCE_THRESHOLD)]
    pub divergence_threshold: f64,

    /// Facet combination for the surface: `sum` or `mean`.
    #[arg(long, default_value = "sum")]
    pub surface_mode: String,
}

#[derive(Debug, Args)]
pub struct QuantumArgs {
    /// State spec JSON.
    #[arg(long)]
    pub input: PathBuf,

    /// Comma-separated qubit names (`Q0,Q1,...`; default: all qubits).
    #[arg(long)]
    pub subset: Option<String>,

    #[command(flatten)]
    pub settings: SettingArgs,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Number of qubits in the state family.
    #[arg(long, default_value_t = 3)]
    pub qubits: usize,

    #[arg(long, default_value_t = 0.0)]
    pub alpha_start: f64,

    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    pub alpha_stop: f64,

    #[arg(long, default_value_t = 5)]
    pub steps: usize,

    #[command(flatten)]
    pub settings: SettingArgs,

    #[command(flatten)]
    pub common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Measures(args) => commands::measures(args).and_then(|s| emit(&args.common, &s)),
        Command::Geometry(args) => commands::geometry(args).and_then(|s| emit(&args.common, &s)),
        Command::Quantum(args) => commands::quantum(args).and_then(|s| emit(&args.common, &s)),
        Command::Sweep(args) => commands::sweep(args).and_then(|s| emit(&args.common, &s)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code())
        }
    }
}

fn emit(common: &CommonArgs, text: &str) -> Result<(), CliError> {
    match &common.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
