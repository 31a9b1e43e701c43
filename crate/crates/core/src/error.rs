use thiserror::Error;

/// Errors raised by distribution validation, measure evaluation and the bound machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("distribution needs at least {min} outcomes, got {n}")]
    TooFewOutcomes { n: usize, min: usize },

    #[error("non-finite entry at index {index}: {value}")]
    NonFinite { index: usize, value: f64 },

    #[error("negative entry at index {index}: {value}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("zero entry at index {index} (strict mode requires every mass > 0)")]
    ZeroEntry { index: usize },

    #[error("entries sum to {sum}, which is not within {tol:e} of 1")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("alphabet size mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("convexity probe failed: non-finite value at x = {x}")]
    ProbeFailure { x: f64 },

    #[error("invalid two-class problem: {0}")]
    InvalidProblem(String),

    #[error("{bound} is unavailable: {reason}")]
    BoundUnavailable { bound: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn unavailable(bound: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::BoundUnavailable {
            bound: bound.into(),
            reason: reason.into(),
        }
    }
}
