use std::path::Path;

use thiserror::Error;

/// Harness failure, tagged with the process exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag values or flag combinations. Exit 1.
    #[error("{0}")]
    Usage(String),
    /// Unreadable or malformed input, or an unwritable output. Exit 2.
    #[error("{0}")]
    Input(String),
    /// The solver produced NaN or infinity. Exit 3.
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub(crate) fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Input(format!("{}: {err}", path.display()))
    }

    /// Wraps a core error raised while reading `path`.
    pub(crate) fn input(path: &Path, err: cfs_core::Error) -> Self {
        CliError::Input(format!("{}: {err}", path.display()))
    }
}

impl From<cfs_core::Error> for CliError {
    fn from(err: cfs_core::Error) -> Self {
        match err {
            cfs_core::Error::NumericalFailure { .. } => CliError::Numerical(err.to_string()),
            cfs_core::Error::Domain(_) => CliError::Usage(err.to_string()),
            _ => CliError::Input(err.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
