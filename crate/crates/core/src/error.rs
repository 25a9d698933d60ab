use thiserror::Error;

/// Errors raised by the library.
///
/// Axiom and law violations are never errors; they are reported as data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no valid sample: every sampled tuple contained a zero-norm element")]
    NoValidSample,
    #[error("ineffective representation: {0}")]
    IneffectiveRepresentation(String),
    #[error("negative scalar: {0}")]
    NegativeScalar(String),
    #[error("arity mismatch: `{symbol}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = OmegaError> = std::result::Result<T, E>;
