use thiserror::Error;

/// Failure categories shared by every layer of the crate.
///
/// The CLI maps these onto exit codes: [`Error::Singularity`] exits with 3,
/// everything else that is not a check failure exits with 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("parameter arity: {0}")]
    Arity(String),
    #[error("internal consistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn singular(msg: impl Into<String>) -> Self {
        Error::Singularity(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
