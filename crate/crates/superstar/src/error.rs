use thiserror::Error;

/// Errors produced by the algebraic layers and the expression front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("signature mismatch between operands")]
    SignatureMismatch,

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not a member of Sp(2n|a,b)")]
    NotSymplectic,

    #[error("element is not divisible by hbar^{0}")]
    HbarDivision(u32),

    #[error("matrix body is not invertible")]
    NotInvertible,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}` for this signature")]
    UnknownVariable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
