use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("distance matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NonSquareMatrix { rows: usize, row: usize, cols: usize },

    #[error("input is degenerate: {0}")]
    Degenerate(String),

    #[error("simplex budget exceeded: {needed} simplices, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("non-monotone filtration: face of simplex {index} has a larger value")]
    NonMonotoneFiltration { index: usize },

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
