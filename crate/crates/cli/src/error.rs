use std::process::ExitCode;

use thiserror::Error;

/// Command failure, mapped onto the stable exit-code contract:
/// 1 comparison mismatch, 2 usage/validation, 3 IO.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }

    pub fn io(path: &std::path::Path, err: impl std::fmt::Display) -> CliError {
        CliError::Io(format!("{}: {err}", path.display()))
    }
}

impl From<CliError> for ExitCode {
    fn from(e: CliError) -> ExitCode {
        ExitCode::from(e.exit_code())
    }
}

/// Library errors are validation failures unless they come from the
/// filesystem.
impl From<ema_core::Error> for CliError {
    fn from(e: ema_core::Error) -> CliError {
        match e {
            ema_core::Error::Io(io) => CliError::Io(io.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
