use casimir_core::CasimirError;
use thiserror::Error;

/// Exit status for bad flags, unparsable values or invalid configurations.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for quadrature, summation or derivative failures.
pub const EXIT_CONVERGENCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] CasimirError),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_convergence() => EXIT_CONVERGENCE,
            CliError::Core(CasimirError::SingularConfiguration(_)) => EXIT_CONVERGENCE,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
