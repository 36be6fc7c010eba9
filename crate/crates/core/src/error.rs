use thiserror::Error;

use crate::hilbert::KetClass;
use crate::scalar::Classification;

pub type Result<T> = std::result::Result<T, Error>;

/// Which idempotent component of a matrix is singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularComponent {
    First,
    Second,
    Both,
}

impl std::fmt::Display for SingularComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularComponent::First => write!(f, "component 1"),
            SingularComponent::Second => write!(f, "component 2"),
            SingularComponent::Both => write!(f, "components 1 and 2"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("NotInvertible: value is {0}")]
    NotInvertible(Classification),

    #[error("SingularMatrix: {0} has vanishing determinant")]
    SingularMatrix(SingularComponent),

    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("BasisMismatch: `{left}` vs `{right}`")]
    BasisMismatch { left: String, right: String },

    #[error("NotABasis: the kets are not linearly independent")]
    NotABasis,

    #[error("NullConePivot: self-product of orthogonalized ket {index} lies in the null cone")]
    NullConePivot { index: usize },

    #[error("NullConeKet: ket is {0}")]
    NullConeKet(KetClass),

    #[error("NonPositiveNorm: (psi, psi) = {a} e1 + {b} e2 is not strictly positive")]
    NonPositiveNorm { a: f64, b: f64 },

    #[error("NotSelfAdjoint: |H* - H| = {residual:e}")]
    NotSelfAdjoint { residual: f64 },

    #[error("NotUnitary: |U*U - I| = {residual:e}")]
    NotUnitary { residual: f64 },

    #[error("SeriesDivergence: terms did not decay within {terms} terms")]
    SeriesDivergence { terms: usize },

    #[error("InvalidXi: {0}")]
    InvalidXi(String),

    #[error("InvalidTolerance: {0}")]
    InvalidTolerance(String),

    #[error("NotHermitian: |G - G^H| = {residual:e} in Gram matrix {component}")]
    NotHermitian { component: usize, residual: f64 },

    #[error("NotPositiveDefinite: Gram matrix {component} failed Cholesky")]
    NotPositiveDefinite { component: usize },

    #[error("InvalidPermutation: {0}")]
    InvalidPermutation(String),

    #[error("NotOrthogonal: max cross product {residual:e}")]
    NotOrthogonal { residual: f64 },

    #[error("NoConvergence: {0}")]
    NoConvergence(String),

    #[error("NonFinite: {0}")]
    NonFinite(String),

    #[error("ParseError at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("KindMismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },

    #[error("DimMismatch: {0}")]
    DimMismatch(String),

    #[error("Io: {0}")]
    Io(String),
}

impl Error {
    /// Errors that come from reading or decoding input rather than from the
    /// mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::KindMismatch { .. } | Error::DimMismatch(_) | Error::Io(_)
        )
    }
}
