//! Error type shared across the library.

/// Errors reported by library operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An exhaustive enumeration or expansion was asked to exceed its
    /// documented cap. Caps fail loudly; nothing is silently truncated.
    #[error("{what}: size {requested} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    /// Invalid argument or mutually inconsistent inputs.
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
