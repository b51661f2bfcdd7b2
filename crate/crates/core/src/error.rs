use thiserror::Error;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (singular matrix,
    /// element outside the required subgroup, zero where a unit is needed).
    #[error("domain error: {0}")]
    Domain(String),
    /// An explicit enumeration guard would be exceeded.
    #[error("resource guard exceeded: {what} needs {needed}, limit is {limit}")]
    Resource {
        what: String,
        needed: u128,
        limit: u128,
    },
    /// A measure cannot be expressed at the requested congruence level.
    #[error("level error: {0}")]
    Level(String),
    /// The request is well-formed but outside what is implemented.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A serialized value could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// Default upper bound on the size of any enumerated group.
pub const DEFAULT_GUARD: u64 = 1_000_000;

pub(crate) fn check_guard(what: &str, needed: u128, limit: u64) -> Result<()> {
    if needed > limit as u128 {
        Err(Error::Resource {
            what: what.to_string(),
            needed,
            limit: limit as u128,
        })
    } else {
        Ok(())
    }
}
