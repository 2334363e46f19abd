use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The instance is larger than the exact machinery supports.
    #[error("capacity exceeded: {what} is {size}, limit is {limit}")]
    Capacity {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    /// A caller-supplied object breaks the contract of the operation.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn capacity(what: &'static str, size: u64, limit: u64) -> Result<()> {
    if size > limit {
        Err(Error::Capacity { what, size, limit })
    } else {
        Ok(())
    }
}
