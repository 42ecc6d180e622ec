use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sawtooth_core::{ExtensionPolicy, ResidueStrategy, DEFAULT_MAX_MODES};

#[derive(Debug, Parser)]
#[command(
    name = "sawtooth",
    version,
    about = "Sawtooth-transform mode decomposition"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose a `t,value` CSV into modes.
    Decompose(DecomposeArgs),
    /// Time the sawtooth method against EMD on generated data.
    Bench(BenchArgs),
    /// Write a built-in test signal as CSV.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Sawtooth,
    Expansion,
    Emd,
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        match self {
            Self::Sawtooth => "sawtooth",
            Self::Expansion => "expansion",
            Self::Emd => "emd",
        }
    }
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Sawtooth)]
    pub method: MethodArg,
    /// even, odd, cyclic or trend
    #[arg(long, default_value = "even")]
    pub extension: ExtensionPolicy,
    /// mean, midpoint or centroid
    #[arg(long, default_value = "mean")]
    pub strategy: ResidueStrategy,
    /// Target accuracy; required for, and only accepted with, `--method expansion`.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_MAX_MODES)]
    pub max_modes: usize,
    /// Component cap for the expansion method.
    #[arg(long, default_value_t = sawtooth_core::expansion::DEFAULT_MAX_COMPONENTS)]
    pub max_components: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write SVG charts.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "10000,100000,1000000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Skip EMD for larger inputs.
    #[arg(long, default_value_t = 1_000_000)]
    pub emd_max_size: usize,
    /// Sawtooth timings are the best of this many runs.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_MODES)]
    pub max_modes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignalKind {
    Sine,
    TwoTone,
    Randomwalk,
    /// Two sinusoids on a random walk.
    Mixed,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: SignalKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Periods of the sine signal.
    #[arg(long, default_value_t = 10.0)]
    pub periods: f64,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
