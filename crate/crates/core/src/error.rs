use thiserror::Error;

use crate::scalar::ParseScalarError;

/// Why a matrix has no inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularCause {
    /// The last band entry `a_n` is zero.
    ZeroLastEntry,
    /// Consecutive band entries `a_k` and `a_{k+1}` coincide (1-based `k`).
    EqualNeighbors { k: usize },
    /// Dense elimination found no usable pivot in this 1-based column.
    NoPivot { column: usize },
}

impl std::fmt::Display for SingularCause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::ZeroLastEntry => write!(f, "last band entry is zero"),
            Self::EqualNeighbors { k } => write!(f, "band entries {k} and {} are equal", k + 1),
            Self::NoPivot { column } => write!(f, "no nonzero pivot in column {column}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LbandError {
    #[error("band vector is empty")]
    EmptyBand,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular: {0}")]
    Singular(SingularCause),
    #[error("no LDL decomposition: band entry {index} is zero before the last nonzero entry")]
    NoLdlDecomposition { index: usize },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("square root of {0} is not representable in this scalar field")]
    IrrationalSquareRoot(String),
    #[error("damping normalizer 1^T V^-1 1 vanishes")]
    ZeroNormalizer,
    #[error("damping step {step}: {source}")]
    DampingStep {
        step: usize,
        #[source]
        source: Box<LbandError>,
    },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("operation needs n >= {min}, got n = {n}")]
    TooSmall { min: usize, n: usize },
}

impl LbandError {
    pub fn is_singular(&self) -> bool {
        match self {
            Self::Singular(_) => true,
            Self::DampingStep { source, .. } => source.is_singular(),
            _ => false,
        }
    }
}

/// Malformed input files.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("input contains no values")]
    Empty,
    #[error("line {line}: {source}")]
    Scalar {
        line: usize,
        #[source]
        source: ParseScalarError,
    },
    #[error("row {row} has {found} columns, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid CSV: {0}")]
    Csv(String),
}

pub type Result<T, E = LbandError> = std::result::Result<T, E>;
