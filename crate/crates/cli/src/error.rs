use std::path::PathBuf;

use thiserror::Error;

/// Exit status for input that parsed but failed validation.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit status for input that could not be read or parsed.
pub const EXIT_PARSE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: cannot read file: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: row {row}: non-numeric value '{value}' in column {column}", path.display())]
    NonNumeric {
        path: PathBuf,
        row: u64,
        column: usize,
        value: String,
    },

    #[error("{}: row {row}: expected 2 columns, found {found}", path.display())]
    Ragged {
        path: PathBuf,
        row: u64,
        found: usize,
    },

    #[error("{}: {message}", path.display())]
    Csv { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    InvalidData {
        path: PathBuf,
        #[source]
        source: corrtest_core::Error,
    },

    #[error(transparent)]
    Validation(#[from] corrtest_core::Error),

    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. }
            | CliError::NonNumeric { .. }
            | CliError::Ragged { .. }
            | CliError::Csv { .. } => EXIT_PARSE,
            CliError::InvalidData { .. } | CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Write(_) => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
