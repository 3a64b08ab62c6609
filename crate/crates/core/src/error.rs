//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the exact-arithmetic layer.
///
/// `Domain` marks violated operation preconditions (division by zero,
/// taking a p-th root of a non-p-th-power, ...). `Unsupported` marks
/// instances outside the supported range (divisibility conditions, size
/// caps). `Parse` carries a position into the offending source text.
/// `Invariant` signals an internal consistency failure and always
/// indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Domain(String),
    Unsupported(String),
    Parse { line: usize, col: usize, msg: String },
    Invariant(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported instance: {msg}"),
            Error::Parse { line, col, msg } => {
                write!(f, "parse error at {line}:{col}: {msg}")
            }
            Error::Invariant(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
