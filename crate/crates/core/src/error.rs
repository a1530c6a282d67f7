use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty range: no primes below {0}")]
    EmptyRange(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("inconsistent parameters: {0}")]
    InconsistentParameters(String),

    #[error("infeasible problem: fixed data leaves budget {budget:.6} < 0")]
    Infeasible { budget: f64 },

    #[error("candidate list up to norm {bound} exhausted with budget {remaining:.6} left")]
    NeedsLargerEnumeration { bound: u64, remaining: f64 },

    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),

    #[error("series coefficient c_{index} is negative")]
    InvalidSeries { index: usize },

    #[error("inapplicable: {0}")]
    Inapplicable(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
