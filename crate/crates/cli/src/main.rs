//! `gmlab`: Bessel tables, GM checks, transforms and the bound for general
//! monotone profiles, plus the counterexample experiments.
//!
//! Exit status: 0 when every asserted inequality holds, 1 when one fails
//! (failures go to stderr and into the report), 2 on configuration errors.

mod commands;
mod experiments;
mod params;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gmlab::par::{set_execution, Execution};

use crate::experiments::Experiment;
use crate::params::Params;

#[derive(Debug, Parser)]
#[command(name = "gmlab", version, about = "Hankel and cosine transforms of general monotone functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    params: Params,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Values and series envelopes of j_α, or the constants S_α (`--table s`).
    Bessel,
    /// Checks or fits the GM (or GMS, with --sequence) condition on a grid.
    GmCheck,
    /// Dyadic block suprema, good/bad flags and the level-set bounds.
    DyadicStats,
    /// Hankel transform over a u grid, or partial integrals with --n-max.
    Transform,
    /// The partial-integral bound with every term, for both S variants.
    BoundReport,
    /// Cosine partial sums of a sequence.
    Series,
    /// Runs a named experiment.
    Experiment {
        #[arg(value_enum)]
        name: Experiment,
    },
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl From<gmlab::Error> for CliError {
    fn from(e: gmlab::Error) -> Self {
        use gmlab::Error::*;
        match e {
            InvalidArgument(_) | UnknownEntry(_) | Parse(_) | OrderOutOfRange(_) | NonIntegrableOrigin { .. } => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let params = cli.params.merge_config()?;
    if params.sequential {
        set_execution(Execution::Sequential);
    }
    let report = match cli.command {
        Command::Bessel => commands::bessel(&params)?,
        Command::GmCheck => commands::gm_check(&params)?,
        Command::DyadicStats => commands::dyadic(&params)?,
        Command::Transform => commands::transform(&params)?,
        Command::BoundReport => commands::bound_report(&params)?,
        Command::Series => commands::series(&params)?,
        Command::Experiment { name } => experiments::run(name, &params)?,
    };
    let out_dir = std::env::var_os("GMLAB_OUT_DIR").map(PathBuf::from);
    report::emit(&report, params.format(), params.out.clone(), out_dir)
        .map_err(|e| CliError::Config(format!("cannot write report: {e}")))?;
    for f in &report.failures {
        eprintln!("FAIL {f}");
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
