use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension n = {0} is not supported (need n >= 2)")]
    InvalidDimension(usize),

    #[error("dimension n = {n} exceeds the configured cap {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("invalid interval: need {lo} < {hi}")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("exponent {exponent} at t = {t} leaves the representable range; use the log-domain quantities")]
    Overflow { t: f64, exponent: f64 },

    #[error("internal consistency violated: {0}")]
    Consistency(String),
}
