use thiserror::Error;

/// Errors produced by the rate engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: `{field}` {reason}")]
    InvalidConfig {
        field: &'static str,
        reason: &'static str,
    },
    #[error("degenerate channel: {0}")]
    DegenerateChannel(&'static str),
    #[error("infeasible: {0}")]
    Infeasible(&'static str),
    #[error("alpha {alpha} exceeds the attainable maximum {alpha_max}")]
    InfeasibleAlpha { alpha: f64, alpha_max: f64 },
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
