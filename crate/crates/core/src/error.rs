use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {vertex} out of range for order {n}")]
    IndexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}: simple graphs have no loops")]
    Loop(usize),

    /// A size limit was exceeded (vertex cap, path-search cap, enumeration guard).
    #[error("capacity exceeded: {what} is {actual}, limit is {limit}")]
    Capacity {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("undefined for input: {0}")]
    UndefinedInput(&'static str),

    #[error("graph6 format error: {0}")]
    Format(String),

    #[error("invalid pattern '{0}': expected Pk, KsvPk or Kp (e.g. P4, K2vP3, K4)")]
    PatternSyntax(String),

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("cache i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, actual: usize, limit: usize) -> Self {
        Error::Capacity {
            what,
            actual,
            limit,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
