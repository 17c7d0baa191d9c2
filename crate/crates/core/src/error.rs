use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("binomial coefficient requires n >= 0, got n = {0}")]
    NegativeBinomial(i64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("matrix size must be at least 1")]
    EmptyMatrix,
    #[error("entry ({i}, {j}) is zero and has no reciprocal")]
    ZeroEntry { i: usize, j: usize },
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },
    #[error("matrix is not unit lower triangular at ({i}, {j})")]
    NotUnitLowerTriangular { i: usize, j: usize },
    #[error("entry ({i}, {j}) = {value} is not an integer")]
    NonInteger { i: usize, j: usize, value: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: expected index {expected}, found {found}")]
    NonConsecutive {
        line: usize,
        expected: i64,
        found: i64,
    },
    #[error("sequence has no terms")]
    EmptySequence,
    #[error("sequences {left} and {right} share no indices")]
    EmptyOverlap { left: String, right: String },
}

pub type Result<T> = std::result::Result<T, Error>;
