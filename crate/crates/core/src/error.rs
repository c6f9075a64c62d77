use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error in field '{field}': {message}")]
    Parse { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("containment failed: {0}")]
    NotContained(String),

    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("bracket of basis vectors {i} and {j} leaves the required component")]
    NotFiltered { i: usize, j: usize },

    #[error("continued filtration stabilizes at a nonzero subspace of dimension {dim} (ineffective)")]
    Ineffective { dim: usize },

    #[error("not a derivation subalgebra: {0}")]
    NotDerivation(String),

    #[error("degenerate form: {0}")]
    Degenerate(String),

    #[error("map is homogeneous of degree {actual}, below the required {required}")]
    NotHomogeneous { required: i32, actual: i32 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
