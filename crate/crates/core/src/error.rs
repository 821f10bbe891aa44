use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the range an operation accepts.
    #[error("usage error: {0}")]
    Usage(String),
    /// The input is well formed but lies outside the operation's domain,
    /// e.g. a non-pure braid handed to the pure-braid order.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// The adaptive Magnus expansion reached its ceiling without finding a
    /// nonzero term.
    #[error("deviation ceiling {ceiling} reached without a nonzero term")]
    DeviationCeiling { ceiling: usize },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
