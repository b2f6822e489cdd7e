use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied arguments outside an operation's domain.
    #[error("invalid input: {0}")]
    Input(String),

    /// Malformed graph or record file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The request exceeds an enumeration guard or integer width.
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// A post-condition that a theorem guarantees did not hold.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn capability<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Capability(msg.into()))
}
