//! Error types shared across the crate.

use thiserror::Error;

/// Operational errors: bad inputs, failed factorizations, I/O.
///
/// Semantic outcomes of the constructive algorithms (e.g. "this operator has
/// no C-symmetry because its spectrum is complex") are *not* errors; they are
/// reported through [`crate::csymmetry::Diagnostic`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid fundamental symmetry: {reason} (defect {defect:.3e})")]
    InvalidFundamentalSymmetry { reason: &'static str, defect: f64 },

    #[error("fundamental symmetry is definite: both eigenspaces must be nontrivial")]
    DefiniteMetric,

    #[error("matrix is not Hermitian: defect {defect:.3e} exceeds {bound:.3e}")]
    NotHermitian { defect: f64, bound: f64 },

    #[error("operator does not anticommute with J: defect {defect:.3e} exceeds {bound:.3e}")]
    NotAnticommuting { defect: f64, bound: f64 },

    #[error("spectral norm {norm} exceeds one; not a transition operator")]
    NormExceedsOne { norm: f64 },

    #[error("transition operator too close to unit norm (norm {norm}, cond estimate {cond:.3e})")]
    NearSingular { norm: f64, cond: f64 },

    #[error("basis is rank deficient: rank {rank} of {cols} columns")]
    RankDeficient { rank: usize, cols: usize },

    #[error("JC has non-positive spectrum: min eigenvalue {min_eig:.3e}")]
    FNotPositive { min_eig: f64 },

    #[error("operator is not J-self-adjoint: defect {defect:.3e} exceeds {bound:.3e}")]
    NotJSelfAdjoint { defect: f64, bound: f64 },

    #[error("gamma = {gamma} is at the critical coupling; C and T are undefined")]
    GammaCritical { gamma: f64 },

    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: &'static str },

    #[error("invalid direct-sum specification: {reason}")]
    InvalidDirectSum { reason: String },

    #[error("linear solve residual {residual:.3e} exceeds {bound:.3e}")]
    SolveResidual { residual: f64, bound: f64 },

    #[error("LAPACK backend failure: {0}")]
    Lapack(String),

    #[error("singular transformation (condition estimate {cond:.3e})")]
    SingularTransform { cond: f64 },

    #[error("C operator failed verification: {clause} defect {defect:.3e}")]
    InvalidCOperator { clause: &'static str, defect: f64 },

    #[error("matrix file error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Lapack(e.to_string())
    }
}
