//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by library operations.
///
/// `Domain` covers invalid mathematical input (bad field parameters, a
/// vanishing constant term where an involution needs one, an invalid class
/// datum). `Budget` covers work that would exceed the configured enumeration
/// limits; callers can retry with a larger [`crate::Budget`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}
