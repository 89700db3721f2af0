use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside an operation's domain.
    #[error("invalid input: {0}")]
    Input(String),

    /// Valid input that a code path deliberately does not handle (e.g. even n for block structure).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An exact identity that must hold did not; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A search would exceed its enumeration cap.
    #[error("enumeration of {estimate:e} assignments exceeds cap {cap:e}")]
    Cap { estimate: f64, cap: f64 },

    #[error("solver failure: {0}")]
    Solver(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
