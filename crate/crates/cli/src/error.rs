use std::path::Path;

use thiserror::Error;

/// Exit codes: 2 bad flags, 3 I/O, 4 invalid state file, 5 failed check.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: invalid state file: {reason}")]
    InvalidState { path: String, reason: String },

    #[error("{0}")]
    Failure(String),

    #[error(transparent)]
    Numeric(#[from] qfdiv::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn invalid_state(path: &Path, reason: impl Into<String>) -> Self {
        CliError::InvalidState {
            path: path.display().to_string(),
            reason: reason.into(),
        }
    }

    pub fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::InvalidState { .. } => 4,
            CliError::Failure(_) => 5,
            CliError::Numeric(_) => 1,
        }
    }
}
