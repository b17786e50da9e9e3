//! `drbench`: generate, simulate, analyze and report randomized benchmarking
//! experiments.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod analyze;
mod config;
mod failure;
mod generate;
mod manifest;
mod report;
mod simulate;
mod svg;

use failure::{Failure, ResultExt};

#[derive(Parser, Debug)]
#[command(
    name = "drbench",
    version,
    about = "Direct and Clifford randomized benchmarking pipeline"
)]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate benchmark circuits from an experiment config.
    Generate(GenerateArgs),
    /// Simulate a generated run under an error model.
    Simulate(SimulateArgs),
    /// Fit decays to one or more datasets.
    Analyze(AnalyzeArgs),
    /// Summarize analyzed runs as a table and an SVG plot.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output run directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Run directory written by `generate`.
    pub run: PathBuf,
    /// Error model: a JSON file or one of `crosstalk5`, `main_sim`, `ideal`.
    #[arg(long)]
    pub model: String,
    /// Shots per circuit (default: the design's shot count).
    #[arg(long)]
    pub shots: Option<u64>,
    /// Simulation seed (default: derived from the run seed).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Record outcome histograms.
    #[arg(long)]
    pub histogram: bool,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Dataset files, or run directories containing `dataset.jsonl`.
    #[arg(required = true)]
    pub datasets: Vec<PathBuf>,
    /// Output directory (default: the first dataset's directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CNOT probability of each dataset's sampler; solves for the CNOT-layer
    /// and one-qubit-layer error rates.
    #[arg(long, value_delimiter = ',', conflicts_with = "matrix")]
    pub mixing: Option<Vec<f64>>,
    /// JSON file with one row of category probabilities per dataset.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Matrix column of the layers without CNOTs, for building-block rates.
    #[arg(long)]
    pub one_qubit_column: Option<usize>,
    /// Bootstrap resamples.
    #[arg(long, default_value_t = drbench_core::analysis::DEFAULT_RESAMPLES)]
    pub resamples: usize,
    /// Bootstrap seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Run directories or results files.
    #[arg(required = true)]
    pub runs: Vec<PathBuf>,
    /// Output directory (default: the first run directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure::config(anyhow::anyhow!(
                "--threads: must be at least 1"
            )));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .runtime()?;
    }
    match cli.command {
        Command::Generate(a) => generate::run(&a),
        Command::Simulate(a) => simulate::run(&a),
        Command::Analyze(a) => analyze::run(&a),
        Command::Report(a) => report::run(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
