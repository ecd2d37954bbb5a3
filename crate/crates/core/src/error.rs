use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input data: bad symbols, out-of-range positions.
    #[error("input error: {0}")]
    Input(String),

    /// An operation was called with arguments outside its contract,
    /// e.g. a length-only matcher handed a regular constraint.
    #[error("usage error: {0}")]
    Usage(String),

    /// Inconsistent configuration such as an incomplete DFA.
    #[error("configuration error: {0}")]
    Config(String),

    /// An exhaustive enumeration would exceed its budget.
    #[error("size error: {candidates} candidates exceed the budget of {budget}")]
    Size { candidates: String, budget: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
