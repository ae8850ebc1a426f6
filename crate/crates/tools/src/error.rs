use std::path::PathBuf;

use grassmann_core::Error as CoreError;

/// Failures surfaced by the command line, each mapped to an exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{failed} of {total} properties failed")]
    PropertyFailure { failed: usize, total: usize },
}

impl CliError {
    /// `1` property failure, `2` bad input, `3` numerical error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::PropertyFailure { .. } => 1,
            CliError::Read { .. } | CliError::Input(_) => 2,
            CliError::Core(e) if e.is_bad_input() => 2,
            CliError::Core(_) | CliError::Write(_) => 3,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("malformed JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Write(std::io::Error::other(e))
    }
}

pub type CliResult<T> = Result<T, CliError>;
