use thiserror::Error;

/// Errors raised by the decomposition pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is empty")]
    Empty,

    #[error("times and values differ in length ({times} vs {values})")]
    LengthMismatch { times: usize, values: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("times must be strictly increasing (index {index}: {previous} then {current})")]
    Ordering {
        index: usize,
        previous: f64,
        current: f64,
    },

    #[error("coordinate {coordinate} outside support [{lo}, {hi}]")]
    Range { coordinate: f64, lo: f64, hi: f64 },

    #[error("insufficient data: need at least {needed} {what}, got {got}")]
    InsufficientData {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("extension policy violated: {0}")]
    PolicyViolation(String),

    #[error("sample at t={t} is not covered by the extended extrema")]
    Coverage { t: f64 },

    #[error("internal consistency error: {0}")]
    Inconsistent(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
