use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped so that a front end can map them onto exit
/// statuses: malformed input, failed preconditions, and broken internal
/// invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("unbounded: {0}")]
    Unbounded(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Malformed or ill-shaped input, as opposed to a well-formed request
    /// the mathematics rejects.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Dimension(_))
    }

    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
