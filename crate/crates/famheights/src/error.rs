//! Library error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("degenerate elimination: {0}")]
    DegenerateElimination(String),
    #[error("no certificate: {0}")]
    CertificateUnavailable(String),
    #[error("bad parameter t = {tau}: guard {guard} vanishes")]
    BadParameter { tau: String, guard: String },
    #[error("budget exceeded: {detail}")]
    BudgetExceeded { detail: String, partial: Vec<f64> },
    #[error("empty bucket: no good parameters with bound {bucket}")]
    EmptyBucket { bucket: u64 },
    #[error("config error: {0}")]
    Config(String),
    #[error("computation error: {0}")]
    Computation(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by a malformed configuration (CLI exit code 2); the
    /// rest are computation failures (exit code 3).
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Parse(_))
    }
}
