use alloc::string::String;
use core::fmt;

/// Errors raised by the library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Structurally invalid input (unknown names, bad relations, wrong sizes).
    Input(String),
    /// A `.quiver` source that does not parse; positions are 1-based.
    Syntax { line: usize, column: usize, message: String },
    /// A documented precondition of an operation does not hold.
    Precondition(String),
    /// The requested computation is outside the supported scope.
    Unsupported(String),
    /// A rewriting system did not certify completion.
    Incomplete(String),
    /// A search or size limit was exceeded.
    Limit(String),
    /// A constructed object failed one of its defining identities.
    Verification { check: String, detail: String },
}

impl Error {
    pub fn verification(check: &str, detail: impl Into<String>) -> Error {
        Error::Verification { check: check.into(), detail: detail.into() }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(m) => write!(f, "invalid input: {}", m),
            Error::Syntax { line, column, message } => write!(f, "line {}, column {}: {}", line, column, message),
            Error::Precondition(m) => write!(f, "precondition failed: {}", m),
            Error::Unsupported(m) => write!(f, "unsupported: {}", m),
            Error::Incomplete(m) => write!(f, "rewriting incomplete: {}", m),
            Error::Limit(m) => write!(f, "limit exceeded: {}", m),
            Error::Verification { check, detail } => write!(f, "verification of {} failed: {}", check, detail),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
