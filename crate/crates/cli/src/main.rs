mod analyze;
mod input;
mod output;
mod perazzo;
mod rollercoaster;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use output::Format;

/// Lefschetz properties of Artinian monomial algebras built from graphs and
/// simplicial complexes.
#[derive(Parser, Debug)]
#[command(name = "lefschetz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Worker threads for rank computations.
    #[arg(long, short = 'j', global = true, env = "LEFSCHETZ_JOBS",
          value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    /// Include wall-clock timings (makes the output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function and Lefschetz verdicts of A(Δ, d̄) or A(w(G), d̄).
    Analyze(analyze::AnalyzeArgs),
    /// Perazzo test, idealization Hilbert function and WLP verdict for F(Ind(w(G))).
    Perazzo(perazzo::PerazzoArgs),
    /// Target sequences and their order/ratio checks for a permutation.
    Rollercoaster(rollercoaster::RollercoasterArgs),
    /// Exhaustive check that α ≥ 3 forces the WLP to fail after whiskering.
    Sweep(sweep::SweepArgs),
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let jobs = match cli.common.jobs {
        Some(j) => j as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("starting the worker pool")?;

    let common = &cli.common;
    match &cli.command {
        Command::Analyze(args) => output::emit(&analyze::run(args, common, jobs)?, common),
        Command::Perazzo(args) => output::emit(&perazzo::run(args, common)?, common),
        Command::Rollercoaster(args) => output::emit(&rollercoaster::run(args, common)?, common),
        Command::Sweep(args) => output::emit(&sweep::run(args, common)?, common),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
