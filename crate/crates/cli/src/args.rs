use std::path::PathBuf;

use ballsep::Mode;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact and Monte Carlo probabilities that partly random hyperplanes
/// separate two Euclidean balls.
#[derive(Parser, Debug)]
#[command(name = "ballsep", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form probabilities for one pair of balls.
    Exact(ExactArgs),
    /// Monte Carlo estimates next to the closed forms.
    Estimate(EstimateArgs),
    /// Closed forms over a grid of dimensions and gaps.
    Sweep(SweepArgs),
    /// All-pairs separation by a layer of random hyperplanes.
    Tessellate(TessellateArgs),
    /// Run the built-in invariant grids.
    Validate(ValidateArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Full,
    Weight,
    Bias,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    FullyRandom,
    RandomWeight,
    RandomBias,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::FullyRandom => Mode::FullyRandom,
            ModeArg::RandomWeight => Mode::RandomWeight,
            ModeArg::RandomBias => Mode::RandomBias,
        }
    }
}

/// A pair of balls, either by explicit centers or by the symmetric generator.
#[derive(Args, Debug, Clone, Default)]
pub struct InstanceArgs {
    /// Center of the first ball, comma separated (repeat for more pairs)
    #[arg(long = "c", value_name = "LIST", allow_hyphen_values = true)]
    pub c: Vec<String>,

    /// Center of the second ball, comma separated (repeat for more pairs)
    #[arg(long = "x", value_name = "LIST", allow_hyphen_values = true)]
    pub x: Vec<String>,

    /// Radius of the first ball (once for all pairs, or once per pair)
    #[arg(long = "r", value_name = "REAL")]
    pub r: Vec<f64>,

    /// Radius of the second ball (once for all pairs, or once per pair)
    #[arg(long = "p", value_name = "REAL")]
    pub p: Vec<f64>,

    /// Bias half-range; defaults to k-factor * max(|c|, |x|)
    #[arg(long = "k", value_name = "REAL")]
    pub k: Option<f64>,

    /// Ambient dimension for the symmetric generator
    #[arg(long = "dim", value_name = "N", conflicts_with_all = ["c", "x"])]
    pub dim: Option<usize>,

    /// sin(phi) = (p + r)/(p + r + delta) for the symmetric generator
    #[arg(long = "sinphi", value_name = "REAL", requires = "dim")]
    pub sinphi: Option<f64>,

    /// k as a multiple of max(|c|, |x|)
    #[arg(long = "k-factor", value_name = "REAL", conflicts_with = "k")]
    pub k_factor: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write output to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct McArgs {
    /// Number of Monte Carlo samples (trials for tessellate)
    #[arg(long)]
    pub samples: Option<u64>,

    /// RNG seed
    #[arg(long, default_value_t = ballsep::DEFAULT_SEED)]
    pub seed: u64,

    /// Parallel partitions; never changes the result
    #[arg(long)]
    pub chunks: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct ExactArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub mc: McArgs,
    /// Estimators to run
    #[arg(long, value_enum, default_value_t = Which::All)]
    pub which: Which,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Dimensions: comma separated values or inclusive ranges like 2..500
    #[arg(long = "dim", value_name = "LIST", required = true)]
    pub dim: String,

    /// Gaps delta, comma separated
    #[arg(long = "delta", value_name = "LIST", conflicts_with = "sinphi")]
    pub delta: Option<String>,

    /// sin(phi) values, comma separated, converted to gaps
    #[arg(long = "sinphi", value_name = "LIST")]
    pub sinphi: Option<String>,

    /// Radius of the first ball
    #[arg(long = "r", default_value_t = 1.0)]
    pub r: f64,

    /// Radius of the second ball
    #[arg(long = "p", default_value_t = 1.0)]
    pub p: f64,

    /// k as a multiple of the largest max(|c|, |x|) in the sweep
    #[arg(long = "k-factor", default_value_t = 1.0, conflicts_with = "k")]
    pub k_factor: f64,

    /// Absolute bias half-range shared by every cell
    #[arg(long = "k")]
    pub k: Option<f64>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write output to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct TessellateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Number of hyperplanes per trial
    #[arg(long, conflicts_with = "target")]
    pub width: Option<usize>,
    /// Plan the width that reaches this all-pairs confidence
    #[arg(long)]
    pub target: Option<f64>,
    /// How the hyperplanes are drawn
    #[arg(long, value_enum, default_value_t = ModeArg::FullyRandom)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ValidateArgs {
    /// Write output to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}
