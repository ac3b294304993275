use thiserror::Error;

/// Errors raised by the library. Each variant belongs to one of three
/// families used by the command line front end for its exit code: bad input,
/// violated precondition, or a failed internal consistency check.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fan is not complete")]
    NotComplete,
    #[error("unknown cone {0}")]
    UnknownCone(String),
    #[error("fan mismatch: {0}")]
    FanMismatch(String),
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("series truncated at order {order}, need at least {needed}")]
    InsufficientOrder { order: usize, needed: usize },
    #[error("class not polynomial; normalize or clear first")]
    NotPolynomial,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Process exit code: 1 for input errors, 2 for precondition violations,
    /// 3 for internal consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidInput(_) | Error::UnknownCone(_) => 1,
            Error::Consistency(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
