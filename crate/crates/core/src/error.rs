use thiserror::Error;

/// Errors raised by the library.
///
/// `Usage` covers malformed requests (bad exponents, mismatched shapes,
/// unsupported parameters); `Domain` covers mathematically undefined
/// requests (inverse of zero, empty varieties, zero test functions).
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("malformed input: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
