use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use kout_core::oracle::DEFAULT_BUDGET;
use kout_core::PairMode;

/// Random K-out graph laboratory: sampling, exact enumeration, closed-form
/// bounds and Monte Carlo connectivity estimates.
///
/// Every flag may also come from a JSON object passed with `--config`. Keys
/// are flag names (`n_start` or `n-start`); a nested object named after the
/// subcommand overrides top-level keys. Flags given on the command line
/// override the file.
#[derive(Debug, Parser)]
#[command(name = "kout", version, args_override_self = true)]
pub struct Cli {
    /// JSON file supplying default flag values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

/// Global options that take a value, for scanning argv before clap runs.
pub const GLOBAL_VALUE_FLAGS: [&str; 3] = ["--config", "--output", "-o"];

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate P(n;K) by simulation.
    Simulate(SimulateArgs),
    /// Evaluate every closed-form bound at one (n, K).
    Bounds(BoundsArgs),
    /// Exact P(n;K) by enumerating all selection profiles.
    Oracle(OracleArgs),
    /// Predicted mean realizations per disconnected one, K = 2, n in 16, 20, 25, 35.
    Table1(Table1Args),
    /// Bounds and simulated estimates over a range of n, one CSV row per (n, K).
    Sweep(SweepArgs),
    /// Enumeration vs closed forms vs simulation at one small (n, K).
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairModeArg {
    /// Ordered pairs of disjoint sets.
    Paper,
    /// Each unordered pair once.
    #[value(alias = "unordered_half", alias = "unordered-half")]
    Half,
}

impl From<PairModeArg> for PairMode {
    fn from(m: PairModeArg) -> Self {
        match m {
            PairModeArg::Paper => PairMode::Paper,
            PairModeArg::Half => PairMode::UnorderedHalf,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundArg {
    This,
    Ym,
    Ff,
    Upper,
}

#[derive(Debug, Clone, Args)]
pub struct Parallelism {
    /// Worker threads [default: physical cores]. Results do not depend on it.
    #[arg(long, env = "KOUT_WORKERS")]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = kout_core::montecarlo::DEFAULT_CONFIDENCE)]
    pub confidence: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the trial-0 selection profile as JSON.
    #[arg(long, value_name = "PATH")]
    pub dump_graph: Option<PathBuf>,
    #[command(flatten)]
    pub parallel: Parallelism,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long, value_enum, default_value_t = PairModeArg::Paper)]
    pub pair_mode: PairModeArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    /// Refuse to enumerate more profiles than this.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Simulated trials per row; 0 prints the analytic columns only.
    #[arg(long, default_value_t = 0)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub parallel: Parallelism,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, default_value = "2")]
    pub ks: Vec<u32>,
    #[arg(long, default_value_t = 16)]
    pub n_start: u32,
    /// Inclusive.
    #[arg(long, default_value_t = 100)]
    pub n_stop: u32,
    #[arg(long, default_value_t = 4)]
    pub n_step: u32,
    /// Simulated trials per point; 0 evaluates bounds only.
    #[arg(long, default_value_t = 0)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        action = ArgAction::Set,
        default_value = "this,ym,ff,upper"
    )]
    pub bounds: Vec<BoundArg>,
    #[arg(long, value_enum, default_value_t = PairModeArg::Paper)]
    pub pair_mode: PairModeArg,
    #[arg(long, default_value_t = kout_core::montecarlo::DEFAULT_CONFIDENCE)]
    pub confidence: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub parallel: Parallelism,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = PairModeArg::Paper)]
    pub pair_mode: PairModeArg,
    #[command(flatten)]
    pub parallel: Parallelism,
}
