use thiserror::Error;

/// Errors produced by the bound, schedule and simulation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid channel parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite result: {0}")]
    Overflow(String),

    #[error("outside the operation's domain: {0}")]
    Domain(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("linear program did not terminate within {iterations} pivots")]
    SolverBudget { iterations: usize },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("malformed network descriptor: {0}")]
    Descriptor(String),

    #[error("output failed: {0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, Error>;
