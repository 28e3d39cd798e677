use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text or missing fields.
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed input that violates a data invariant (bounds, parity,
    /// admissibility, quasisplit constraint).
    #[error("invalid data: {0}")]
    InvalidData(String),

    /// An operation was called outside the hypotheses it is valid for.
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("recursion limit of {limit} reduction steps exceeded")]
    RecursionLimit { limit: usize },

    /// The termination measure failed to decrease; always a bug.
    #[error("termination measure did not decrease: {0}")]
    MeasureViolation(String),
}

impl Error {
    /// Process exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::InvalidData(_) => 3,
            Error::RecursionLimit { .. } => 4,
            Error::Hypothesis(_) | Error::MeasureViolation(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
