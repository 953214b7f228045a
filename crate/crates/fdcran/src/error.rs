use fdcran_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VALIDATION_FAILED: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const UNSUPPORTED: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(CoreError),
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidConfig { field, reason } => AppError::Config(format!("field `{field}` {reason}")),
            CoreError::Unsupported(m) | CoreError::Infeasible(m) => AppError::Unsupported(m.to_string()),
            other => AppError::Core(other),
        }
    }
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::ValidationFailed(_) => exit::VALIDATION_FAILED,
            AppError::Unsupported(_) => exit::UNSUPPORTED,
            _ => exit::CONFIG,
        }
    }
}

pub type AppResult<T> = std::result::Result<T, AppError>;
