use thiserror::Error;

/// Failures mapped onto the process exit code: 2 for invalid or infeasible
/// requests, 3 for verification mismatches, 1 for I/O trouble.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] polycount_core::Error),
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Core(polycount_core::Error::OracleInconsistent(_)) => 3,
            CliError::Core(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => 1,
        }
    }
}
