use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("threshold exceeded: {0}")]
    ThresholdExceeded(String),

    #[error("unclassified unbounded set: {0}")]
    UnclassifiedSet(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("invalid tangent-ball witness: {0}")]
    InvalidWitness(String),

    #[error("same-sign bracket: I({lo}) = {f_lo}, I({hi}) = {f_hi}")]
    SameSignBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("set-spec JSON: {0}")]
    Json(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
