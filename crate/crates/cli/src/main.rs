//! `equinum`: variability and uncertainty indicators from the command line.
//!
//! Exit codes: 0 success, 1 an oracle check failed, 2 data or validation
//! error, 64 usage error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "equinum",
    version,
    about = "Variability and uncertainty indicators for discrete probability distributions"
)]
struct Cli {
    /// Omit `generated_at` so output is byte-stable across runs.
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute every indicator of one distribution.
    Analyze(AnalyzeArgs),
    /// Indicators of B(n, p) over a grid of p for each n.
    BinomialSweep(SweepArgs),
    /// Per-area reports and chart table for a wave direction table.
    Gws(GwsArgs),
    /// Eight-spoke rose data for one area.
    Rose(RoseArgs),
    /// Run independent validation checks.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rank {
    D,
    F,
    #[value(name = "cv_rel")]
    CvRel,
    #[value(name = "h_rel")]
    HRel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    MaxVariance,
    Bounds,
    Cross,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// One outcome probability; repeat for each outcome.
    #[arg(long = "probs", allow_negative_numbers = true, value_name = "P")]
    pub probs: Vec<f64>,
    /// Observation count; repeat for each outcome. Converted to relative frequencies.
    #[arg(long = "counts", value_name = "COUNT")]
    pub counts: Vec<u64>,
    /// File with probabilities: a JSON array, a JSON object
    /// `{"probs": [...], "labels": [...]}`, or numbers separated by commas or whitespace.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Trial counts, comma separated.
    #[arg(long = "n", required = true, value_delimiter = ',', value_parser = clap::value_parser!(u32).range(1..))]
    pub n: Vec<u32>,
    /// Number of p grid points from 0 to 1 inclusive.
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..100_000_001))]
    pub p_steps: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GwsArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// JSON array of per-area reports. Written to stdout if neither --report nor --chart is given.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// CSV table `area_id,p_total,cv_rel,h_rel,d,f,g`.
    #[arg(long)]
    pub chart: Option<PathBuf>,
    /// Order areas by this key, largest first. Default order is by area id.
    #[arg(long, value_enum)]
    pub rank: Option<Rank>,
}

#[derive(Debug, Args)]
pub struct RoseArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    #[arg(long)]
    pub area: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Check to run; repeat to run several.
    #[arg(long = "check", value_enum, required = true)]
    pub checks: Vec<Check>,
    /// Number of outcomes (sampled vectors, or the uniform vector used when --probs is absent).
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub p_total: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Distribution for `bounds` and `cross`; uniform(n) when omitted.
    #[arg(long = "probs", allow_negative_numbers = true, value_name = "P")]
    pub probs: Vec<f64>,
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
    let timestamp = !cli.no_timestamp;
    let result = match &cli.command {
        Command::Analyze(a) => commands::analyze(a, timestamp),
        Command::BinomialSweep(a) => commands::binomial_sweep(a, timestamp),
        Command::Gws(a) => commands::gws(a, timestamp),
        Command::Rose(a) => commands::rose(a, timestamp),
        Command::Oracle(a) => commands::oracle(a, timestamp),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("equinum: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
