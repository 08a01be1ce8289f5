//! Crate-wide error type. Variants map one-to-one onto CLI exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual or JSON input (diagram files, color files, labels).
    #[error("parse error: {0}")]
    Parse(String),

    /// A structurally invalid diagram or network: mismatched widths, a cap
    /// joining edges of different colors, an open diagram where a closed one
    /// is required, and so on.
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    /// An operation that only makes sense for admissible label triples was
    /// asked to produce a non-scalar result from an inadmissible one.
    #[error("inadmissible labels: {0}")]
    Inadmissible(String),

    /// The brute-force oracle exceeded its composition budget.
    #[error("oracle budget exceeded: {spent} elementary compositions (budget {budget})")]
    BudgetExceeded { spent: u64, budget: u64 },

    /// An internal invariant failed. Seeing this is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: parse errors 2, inadmissible 3,
    /// invalid diagrams 4, budget 5, internal 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Inadmissible(_) => 3,
            Error::InvalidDiagram(_) => 4,
            Error::BudgetExceeded { .. } => 5,
            Error::Internal(_) => 1,
        }
    }
}
