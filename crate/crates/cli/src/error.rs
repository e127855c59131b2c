use thiserror::Error;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or configuration values.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] pflicm::Error),
    /// A run stopped at its iteration cap under `--strict`.
    #[error("{0}")]
    NotConverged(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }

    /// 1 for usage and configuration errors, 2 for unreadable or malformed
    /// files and failed writes, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 1,
            Self::Core(e) if e.is_io() => 2,
            Self::Core(pflicm::Error::Csv { .. }) => 2,
            Self::Core(pflicm::Error::DegenerateCluster { .. }) => 3,
            Self::Core(_) => 1,
            Self::NotConverged(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
