//! Crate-wide error type.

use num_complex::Complex;
use thiserror::Error;

/// A single violated shape rule found while validating raw moment input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    /// Matrix size must be at least 1.
    ZeroMatrixSize,
    /// Wrong number of moment matrices.
    WrongCount { expected: usize, got: usize },
    /// A moment matrix has the wrong shape.
    WrongShape {
        index: usize,
        expected: usize,
        rows: usize,
        cols: usize,
    },
    /// A moment entry is NaN or infinite.
    NonFinite { index: usize, row: usize, col: usize },
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationIssue::ZeroMatrixSize => write!(f, "matrix size N must be >= 1"),
            ValidationIssue::WrongCount { expected, got } => {
                write!(f, "expected {expected} moment matrices, got {got}")
            }
            ValidationIssue::WrongShape {
                index,
                expected,
                rows,
                cols,
            } => write!(
                f,
                "moment {index} must be {expected}x{expected}, got {rows}x{cols}"
            ),
            ValidationIssue::NonFinite { index, row, col } => {
                write!(f, "moment {index} has a non-finite entry at ({row},{col})")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid moment data: {}", format_issues(.0))]
    Validation(Vec<ValidationIssue>),

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} below -{tolerance:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64, tolerance: f64 },

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("Gram data violates shift invariance (least-squares residual {residual:.3e})")]
    InconsistentGram { residual: f64 },

    #[error("parameter is not a contraction: singular value {sigma:.12} at zeta = {}", fmt_zeta(.zeta))]
    NotContraction { sigma: f64, zeta: Option<Complex<f64>> },

    #[error("parameter is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("parameter has wrong defect size: expected delta={expected}, got {got}")]
    DefectMismatch { expected: usize, got: usize },

    #[error("zeta = {} is outside the admissible region: {constraint}", fmt_zeta(&Some(*.zeta)))]
    ZetaOutOfRange {
        zeta: Complex<f64>,
        constraint: &'static str,
    },

    #[error("eigendecomposition failed (residual {residual:.3e} exceeds {tolerance:.3e})")]
    Eigen { residual: f64, tolerance: f64 },

    #[error("internal contract violation: {0}")]
    Internal(String),

    #[error("invalid argument {name}: {message}")]
    Knob { name: &'static str, message: String },

    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown solution type {0:?} (expected \"atomic\" or \"grid\")")]
    UnknownSolutionType(String),

    #[error("unknown parameter kind {0:?} (expected \"constant\" or \"polynomial\")")]
    UnknownParamKind(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn format_issues(issues: &[ValidationIssue]) -> String {
    issues
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn fmt_zeta(z: &Option<Complex<f64>>) -> String {
    match z {
        Some(z) => format!("{}{:+}i", z.re, z.im),
        None => "constant".to_string(),
    }
}
