//! Job plumbing shared by every subcommand: error-to-exit-code
//! mapping, input loading, and overwrite-safe output emission.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::path::{Path, PathBuf};
use thiserror::Error;

use reflekt_core::exact::{ExactScalar, ExactVector};
use reflekt_core::qspace::{Polyhedron, QuadraticSpace};

/// Failure modes of a CLI run, ordered by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Help or version was printed; exits 0 without further output.
    #[error("")]
    Quiet,
    /// Invalid arguments, unreadable inputs, or failed validation.
    #[error("{0}")]
    Usage(String),
    /// A budget cap stopped the run before it could finish.
    #[error("{0}")]
    Budget(String),
    /// A library invariant failed mid-run.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// The process exit code for this failure.
    pub fn code(&self) -> u8 {
        match self {
            CliError::Quiet => 0,
            CliError::Usage(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

/// Shorthand for building a usage error from any displayable cause.
pub fn usage(message: impl std::fmt::Display) -> CliError {
    CliError::Usage(message.to_string())
}

/// Where a command writes its machine-readable payload.
pub struct JobConfig {
    out: Option<PathBuf>,
    force: bool,
}

impl JobConfig {
    /// Captures the `--out`/`--force` pair of a subcommand.
    pub fn new(out: Option<PathBuf>, force: bool) -> Self {
        Self { out, force }
    }

    /// Writes `payload` to `--out` or stdout, newline-terminated.
    ///
    /// An existing output file is never overwritten without `--force`.
    pub fn emit(&self, payload: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => {
                self.guard_overwrite(path)?;
                std::fs::write(path, format!("{payload}\n"))
                    .map_err(|err| usage(format!("cannot write {}: {err}", path.display())))
            }
            None => {
                println!("{payload}");
                Ok(())
            }
        }
    }

    /// Writes a side artifact (DOT, SVG) under the same overwrite rule.
    pub fn emit_to(&self, path: &Path, payload: &str) -> Result<(), CliError> {
        self.guard_overwrite(path)?;
        std::fs::write(path, payload)
            .map_err(|err| usage(format!("cannot write {}: {err}", path.display())))
    }

    fn guard_overwrite(&self, path: &Path) -> Result<(), CliError> {
        if !self.force && path.exists() {
            return Err(usage(format!(
                "{} exists; pass --force to overwrite",
                path.display()
            )));
        }
        Ok(())
    }
}

/// Serializes a report as pretty JSON (deterministic field order).
pub fn to_json<T: serde::Serialize>(report: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(report)
        .map_err(|err| CliError::Internal(format!("cannot serialize report: {err}")))
}

/// Rejects zero-valued budgets with a uniform message.
pub fn positive_budget(name: &str, value: usize) -> Result<usize, CliError> {
    if value == 0 {
        return Err(usage(format!("--{name} must be positive")));
    }
    Ok(value)
}

/// Loads a quadratic form from a JSON file or the `diag,a,b,...`
/// shorthand.
pub fn load_space(spec: &str) -> Result<QuadraticSpace, CliError> {
    if let Some(rest) = spec.strip_prefix("diag,") {
        let entries: Vec<i64> = rest
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|_| usage(format!("bad diagonal entry {part:?} in {spec:?}")))
            })
            .collect::<Result<_, _>>()?;
        return QuadraticSpace::diagonal(&entries)
            .map_err(|err| usage(format!("shorthand form {spec:?}: {err}")));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|err| usage(format!("cannot read form {spec:?}: {err}")))?;
    serde_json::from_str(&text).map_err(|err| usage(format!("bad form in {spec:?}: {err}")))
}

/// Loads a polyhedron (form plus root list) from a JSON file.
pub fn load_polyhedron(path: &Path) -> Result<Polyhedron, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| usage(format!("cannot read {}: {err}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|err| usage(format!("bad polyhedron in {}: {err}", path.display())))
}

/// Parses a comma-separated vector of exact scalars.
pub fn parse_vector(text: &str, dim: usize) -> Result<ExactVector, CliError> {
    let coords: Vec<ExactScalar> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<ExactScalar>()
                .map_err(|err| usage(format!("bad coordinate {part:?}: {err}")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != dim {
        return Err(usage(format!(
            "expected {dim} coordinates, got {}",
            coords.len()
        )));
    }
    Ok(ExactVector(coords))
}

/// Parses a positive rational such as `15/2` or `7`.
pub fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad rational {text:?}")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad rational {text:?}")))?;
            if den == BigInt::from(0) {
                return Err(usage(format!("zero denominator in {text:?}")));
            }
            BigRational::new(num, den)
        }
        None => BigRational::from(
            text.trim()
                .parse::<BigInt>()
                .map_err(|_| usage(format!("bad rational {text:?}")))?,
        ),
    };
    if value <= BigRational::from(BigInt::from(0)) {
        return Err(usage(format!("{text:?} must be positive")));
    }
    Ok(value)
}

/// Converts a 1-based wall index from the command line to 0-based.
pub fn wall_index(value: usize, walls: usize) -> Result<usize, CliError> {
    if value == 0 || value > walls {
        return Err(usage(format!(
            "wall {value} is out of range 1..={walls}"
        )));
    }
    Ok(value - 1)
}
