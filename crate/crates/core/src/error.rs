use thiserror::Error;

/// Errors raised by the library.
///
/// Contract violations are caller mistakes (bad arity, preconditions);
/// the remaining variants describe inputs that are well formed but fall
/// outside what an operation can answer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported node count delta = {0} (expected 1, 2 or 3)")]
    UnsupportedDelta(u32),

    #[error("configuration out of range: {0}")]
    OutOfRange(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("no generic configuration found after {attempts} attempts (first seed {seed})")]
    Genericity { seed: u64, attempts: u32 },

    #[error("genericity violation during scan: {0}")]
    ScanAborted(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("search budget exhausted: {0}")]
    Resource(String),

    #[error("invalid fibre graph: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
