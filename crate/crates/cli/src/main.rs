//! Command-line driver for reflection-group computations in
//! hyperbolic lattices.
//!
//! Seven subcommands wire the library into pipelines: `vinberg` runs
//! the wall enumeration on a quadratic form, `diagram` classifies the
//! angles of a polyhedron, `arith` applies the arithmeticity
//! criterion, `clusters` lists packing seeds, `pack` expands a sphere
//! orbit, `double` straightens a wall by iterated doubling, and
//! `fixtures` replays the checked-in reference data against the
//! built-in constructors.
//!
//! Machine-readable JSON goes to stdout (or `--out`), human summaries
//! to stderr.  Identical invocations produce byte-identical outputs.
//! Exit codes: 0 success, 1 invalid input, 2 budget exhausted before a
//! finite-volume chamber appeared, 3 internal invariant violation.
//!
//! The environment variable `REFLEKT_WORKERS` caps the worker-thread
//! count; computations are deterministic regardless of its value.

mod commands;
mod fixtures;
mod job;
mod reports;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::process::ExitCode;

use crate::job::CliError;

#[derive(Parser)]
#[command(
    name = "reflekt",
    version,
    about = "Reflection groups, Coxeter diagrams and sphere packings over Lorentzian lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the walls of a fundamental chamber for a quadratic form.
    Vinberg(commands::VinbergArgs),
    /// Classify the dihedral angles of a polyhedron as a diagram.
    Diagram(commands::DiagramArgs),
    /// Decide arithmeticity from the cycles of the Gram matrix.
    Arith(commands::ArithArgs),
    /// List isolated walls and cluster/cocluster partitions.
    Clusters(commands::ClustersArgs),
    /// Expand a sphere-packing orbit in inversive coordinates.
    Pack(commands::PackArgs),
    /// Straighten a wall by doubling across its π/4-neighbours.
    Double(commands::DoubleArgs),
    /// Verify the checked-in fixture files against the library.
    Fixtures(commands::FixturesArgs),
}

/// Applies `REFLEKT_WORKERS` to the global worker pool.
fn configure_workers() -> Result<(), CliError> {
    let text = match std::env::var("REFLEKT_WORKERS") {
        Ok(text) => text,
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(std::env::VarError::NotUnicode(_)) => {
            return Err(CliError::Usage(
                "REFLEKT_WORKERS must be valid unicode".into(),
            ))
        }
    };
    let workers: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "REFLEKT_WORKERS must be a positive integer, got {text:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|source| CliError::Internal(format!("cannot size the worker pool: {source}")))
}

fn run() -> Result<(), CliError> {
    let cli = Cli::try_parse().map_err(|err| match err.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            print!("{err}");
            CliError::Quiet
        }
        _ => CliError::Usage(err.to_string()),
    })?;
    configure_workers()?;
    match cli.command {
        Command::Vinberg(args) => commands::vinberg(args),
        Command::Diagram(args) => commands::diagram(args),
        Command::Arith(args) => commands::arith(args),
        Command::Clusters(args) => commands::clusters(args),
        Command::Pack(args) => commands::pack(args),
        Command::Double(args) => commands::double(args),
        Command::Fixtures(args) => commands::fixtures(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Quiet) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}
