//! Library-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input (graph files, matrices, certificates).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A configured work or size budget was exhausted before completion.
    #[error("budget exceeded in {what}: {detail}")]
    Budget { what: &'static str, detail: String },

    /// Invalid parameters to a generator or operation.
    #[error("invalid parameter: {0}")]
    Param(String),

    /// Operand dimensions do not agree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A certificate is structurally malformed (as opposed to merely failing
    /// its verification conditions, which is a reject verdict, not an error).
    #[error("malformed certificate: {0}")]
    Certificate(String),

    /// A floating-point kernel failed to converge or produced an invalid
    /// result; carries the residual or best iterate description.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// A theorem-backed inequality was violated beyond tolerance. This always
    /// indicates an implementation bug and is surfaced loudly.
    #[error("chain violation: {0}")]
    ChainViolation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
