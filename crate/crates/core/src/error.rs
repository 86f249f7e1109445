use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("length mismatch: expected {expected} bytes, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid challenge {0}")]
    InvalidChallenge(u8),

    #[error("malformed encoding: {0}")]
    Malformed(&'static str),

    #[error("truncated input")]
    Truncated,

    #[error("commitment scheme is not invertible")]
    NotInvertible,

    #[error("parameters too large for exhaustive enumeration: {0}")]
    TooLarge(String),
}
