use std::fmt;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A size guard would be exceeded; carries the guard name reported by the CLI.
    Guard { guard: &'static str, detail: String },
    /// Malformed input (empty facet, bad label, non-subcomplex, ...).
    Invalid(String),
    /// A precondition of an operation does not hold.
    Precondition(String),
    Serialization(String),
}

impl Error {
    pub fn guard(guard: &'static str, detail: impl Into<String>) -> Self {
        Error::Guard { guard, detail: detail.into() }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Guard { guard, detail } => write!(f, "size guard `{guard}` exceeded: {detail}"),
            Error::Invalid(s) => write!(f, "invalid input: {s}"),
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
            Error::Serialization(s) => write!(f, "serialization: {s}"),
        }
    }
}

impl std::error::Error for Error {}
