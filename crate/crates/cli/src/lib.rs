//! Text front end for `bforder`: element documents, the commands behind the
//! `bforder` binary and the seeded property-fuzz harness.

pub mod commands;
pub mod doc;
pub mod fuzz;

use std::process::ExitCode;

/// Name of the environment variable that bounds adaptive Magnus precision.
pub const CEILING_VAR: &str = "BFORDER_DEVIATION_CEILING";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] bforder::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    /// An invariant failed; the payload is the full report.
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    /// 0 success, 1 invariant violation, 2 parse or usage error, 3 domain
    /// error.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Violation(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Core(bforder::Error::Usage(_) | bforder::Error::Parse(_)) => 2,
            CliError::Core(bforder::Error::Domain(_) | bforder::Error::DeviationCeiling { .. }) => {
                3
            }
        })
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Reads the deviation ceiling from [`CEILING_VAR`]; unset means the
/// library default.
pub fn ceiling_from_env() -> CliResult<Option<usize>> {
    match std::env::var(CEILING_VAR) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .map(Some)
            .ok_or_else(|| {
                bforder::Error::Usage(format!(
                    "{CEILING_VAR} must be a positive integer, got {v:?}"
                ))
                .into()
            }),
    }
}
