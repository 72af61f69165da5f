use std::io;

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] su2ca::Error),

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn parse(path: impl Into<String>, message: impl ToString) -> Self {
        CliError::Parse { path: path.into(), message: message.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(su2ca::Error::UnknownPreset(_)) => EXIT_INPUT,
            CliError::Core(_) => EXIT_DOMAIN,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(source: io::Error) -> Self {
        CliError::Io { path: "<stdout>".into(), source }
    }
}

pub type CliResult<T> = Result<T, CliError>;
