//! `noisemetrics` command-line front end.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 usage errors and
//! dimension mismatches, 3 data that violates an invariant (for example a
//! dominated reference set).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use noisemetrics::igd::{Normalise, SelectionDistance};
use noisemetrics::{ErrorKind, MetricError, UtilityKind};

#[derive(Parser)]
#[command(name = "noisemetrics", version, about = "Noise-aware quality indicators for multi-objective optimisation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute classical and noise-aware indicators for a solution set.
    Compute(ComputeArgs),
    /// Report exclusion, inclusion and selection errors caused by noise.
    Diagnose(DiagnoseArgs),
    /// Run the noise sweep and write a report.
    Sweep(SweepArgs),
    /// Export plot data describing how each indicator was computed.
    FigureData(FigureArgs),
    /// Check input files without computing anything.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    R2,
    Nr2,
    Igd,
    #[value(name = "igd+")]
    IgdPlus,
    Nigd,
    #[value(name = "nigd+")]
    NigdPlus,
    Misinfo,
    Ndfrac,
    All,
}

impl Metric {
    fn needs_reference(self) -> bool {
        matches!(self, Metric::Igd | Metric::IgdPlus | Metric::Nigd | Metric::NigdPlus)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UtilityArg {
    Linear,
    Chebycheff,
}

impl From<UtilityArg> for UtilityKind {
    fn from(u: UtilityArg) -> Self {
        match u {
            UtilityArg::Linear => UtilityKind::Linear,
            UtilityArg::Chebycheff => UtilityKind::Chebycheff,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormaliseArg {
    Sum,
    Mean,
}

impl From<NormaliseArg> for Normalise {
    fn from(n: NormaliseArg) -> Self {
        match n {
            NormaliseArg::Sum => Normalise::Sum,
            NormaliseArg::Mean => Normalise::Mean,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SelectionArg {
    #[value(name = "igd-plus")]
    IgdPlus,
    Euclidean,
}

impl From<SelectionArg> for SelectionDistance {
    fn from(s: SelectionArg) -> Self {
        match s {
            SelectionArg::IgdPlus => SelectionDistance::IgdPlus,
            SelectionArg::Euclidean => SelectionDistance::Euclidean,
        }
    }
}

/// Weight-set options shared by every R2-based command.
#[derive(Args, Clone)]
pub struct WeightArgs {
    /// Number of weight vectors sampled uniformly from the simplex.
    #[arg(long = "weights-m", default_value_t = noisemetrics::r2::DEFAULT_SAMPLES)]
    pub m: usize,
    /// Explicit weight set (CSV with columns l1..lD); overrides sampling.
    #[arg(long = "weights-file")]
    pub file: Option<PathBuf>,
    /// Seed for weight sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct ComputeArgs {
    /// Solution-set file (.json, otherwise CSV).
    pub solutions: PathBuf,
    /// Reference-set CSV, required by the IGD family.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub metric: Vec<Metric>,
    #[arg(long, value_enum, default_value = "linear")]
    pub utility: UtilityArg,
    #[command(flatten)]
    pub weights: WeightArgs,
    #[arg(long, value_enum, default_value = "sum")]
    pub normalise: NormaliseArg,
    /// Distance used by nIGD+ to pick a solution for each target.
    #[arg(long = "nigd-plus-selection", value_enum, default_value = "igd-plus")]
    pub nigd_plus_selection: SelectionArg,
    /// Also report how many weight samples had tied minimisers.
    #[arg(long = "audit-ties")]
    pub audit_ties: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Args)]
pub struct DiagnoseArgs {
    pub solutions: PathBuf,
    /// Reference set for the distance view of selection errors.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "linear")]
    pub utility: UtilityArg,
    #[command(flatten)]
    pub weights: WeightArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Flat JSON config; flags below override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Noise half-widths, comma separated and strictly increasing.
    #[arg(long, value_delimiter = ',')]
    pub eta: Option<Vec<f64>>,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "weights-m")]
    pub weights_m: Option<usize>,
    #[arg(long = "n-solutions")]
    pub n_solutions: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args)]
pub struct FigureArgs {
    pub solutions: PathBuf,
    #[arg(long)]
    pub reference: PathBuf,
    #[command(flatten)]
    pub weights: WeightArgs,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub solutions: Option<PathBuf>,
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[arg(long = "weights-file")]
    pub weights_file: Option<PathBuf>,
}

/// Errors surfaced to the user, with the exit code they map to.
#[derive(Debug)]
pub enum CliError {
    Metric(MetricError),
    Usage(String),
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        CliError::Metric(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Metric(e) => match e.kind() {
                ErrorKind::Input => 1,
                ErrorKind::Usage => 2,
                ErrorKind::Invariant => 3,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Metric(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => commands::compute(&args),
        Command::Diagnose(args) => commands::diagnose(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::FigureData(args) => commands::figure_data(&args),
        Command::Validate(args) => commands::validate(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
