//! `meanchaos`: generate fixtures, classify pairs, measure empirical
//! diagnostics and run witness scans from the command line.
//!
//! Exit codes: 0 success (including honest "not found" reports), 2 usage,
//! 3 prefix budget or stage cap, 4 I/O.

mod commands;
mod output;
mod points;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use meanchaos::symseq::DEFAULT_PREFIX_BUDGET;

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<meanchaos::Error> for CliError {
    fn from(e: meanchaos::Error) -> Self {
        use meanchaos::Error as E;
        match e {
            E::BudgetExceeded { .. } => CliError::Budget(format!("{e} (raise --budget or lower --N/--len/--k)")),
            E::StageCapacity { .. } | E::StageCap { .. } => CliError::Budget(e.to_string()),
            E::Io(_) | E::Format(_) => CliError::Io(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "meanchaos", version, about = "Finite-horizon mean chaos diagnostics on subshifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a prefix of a builtin point as a .sym file with a manifest.
    Gen(GenArgs),
    /// Classify a pair of points at a finite horizon.
    Pair(PairArgs),
    /// Empirical-measure diagnostics of one point over a grid of horizons.
    Measure(MeasureArgs),
    /// Diagonal mass and product empirical measure of a pair.
    MeasurePair(MeasurePairArgs),
    /// Witness searches.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Largest prefix any point may materialize, in symbols.
    #[arg(long, default_value_t = DEFAULT_PREFIX_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write here (atomically) instead of stdout; a `.manifest.json` sidecar
    /// is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    /// Horizon N.
    #[arg(long = "N", default_value_t = 100_000)]
    pub n: usize,
    /// Distance window W.
    #[arg(long = "W", default_value_t = 64)]
    pub w: usize,
    /// First n scanned for liminf-type flags.
    #[arg(long = "burn-in", default_value_t = 16)]
    pub burn_in: usize,
    /// Tolerance ε, as p/q or a decimal.
    #[arg(long, default_value = "1/16")]
    pub eps: String,
    /// Modulus η; 0 disables the threshold.
    #[arg(long, alias = "modulus", default_value = "1/4")]
    pub eta: String,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// example | delta | fixed:<s> | periodic:<word>
    #[arg(long)]
    pub builtin: String,
    /// Stage k of the example construction.
    #[arg(long)]
    pub k: Option<u32>,
    /// Prefix length.
    #[arg(long)]
    pub len: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
    /// Allow stages above the default cap.
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub x: String,
    pub y: String,
    #[command(flatten)]
    pub class: ClassArgs,
    /// Also write the Cesàro series as CSV here.
    #[arg(long)]
    pub series: Option<PathBuf>,
    /// Thin the series CSV to roughly 10%-spaced rows.
    #[arg(long)]
    pub log_spaced: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    pub x: String,
    /// Comma-separated horizons.
    #[arg(long = "N", value_delimiter = ',', default_value = "100000")]
    pub n: Vec<usize>,
    /// Cylinder length.
    #[arg(long = "L", default_value_t = 3)]
    pub l: usize,
    /// Symbol of the fixed-point candidate s^∞.
    #[arg(long, default_value_t = 0)]
    pub fixed: u8,
    /// Shifts of x compared against x for the unique-ergodicity diagnostic.
    #[arg(long, value_delimiter = ',', default_value = "1,10,100")]
    pub shifts: Vec<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct MeasurePairArgs {
    pub x: String,
    pub y: String,
    #[arg(long = "N", value_delimiter = ',', default_value = "100000")]
    pub n: Vec<usize>,
    #[arg(long = "L", default_value_t = 3)]
    pub l: usize,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(subcommand)]
    pub kind: ScanKind,
}

#[derive(Debug, Subcommand)]
pub enum ScanKind {
    /// Search the depth-c cylinder around x for a mean-sensitivity witness.
    Sensitivity {
        x: String,
        /// Cylinder depth.
        #[arg(long, default_value_t = 1)]
        c: usize,
        /// Target δ for the late lower average.
        #[arg(long, default_value = "1/2")]
        delta: String,
        /// Use only x and its re-entering shifts as candidates.
        #[arg(long)]
        pool_self_only: bool,
        /// Earliest re-entering shifts added to the pool.
        #[arg(long, default_value_t = 8)]
        reentries: usize,
        /// Seed for sampling further re-entering shifts.
        #[arg(long)]
        seed: Option<u64>,
        /// How many shifts to sample when --seed is given.
        #[arg(long, default_value_t = 8)]
        sampled: usize,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Greedy mean Li-Yorke set from tail witnesses and re-entries.
    Scrambled {
        x: String,
        /// Point whose deep cylinders x should re-enter.
        #[arg(long, default_value = "fixed:0")]
        anchor: String,
        /// Requested set size.
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Classify x against a periodic point and the derived orbit pairs.
    Anchor {
        x: String,
        #[arg(long, default_value = "fixed:0")]
        anchor: String,
        /// Period t of the anchor.
        #[arg(long, default_value_t = 1)]
        period: usize,
        /// Largest multiple n2 in the derived pairs.
        #[arg(long, default_value_t = 2)]
        multiples: u64,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Pair(a) => commands::pair(a),
        Command::Measure(a) => commands::measure(a),
        Command::MeasurePair(a) => commands::measure_pair(a),
        Command::Scan(a) => commands::scan(a.kind),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
