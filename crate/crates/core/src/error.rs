//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must share an ambient dimension or format do not.
    DimensionMismatch(String),
    /// A pairing matrix passed to `annihilator` is singular.
    DegeneratePairing,
    /// A relation vector mixes the even and odd coordinate blocks.
    NonHomogeneousRelation { index: usize },
    /// Matrix fails `B*B == B`.
    NotIdempotent,
    /// Structural operator has an entry connecting different parities.
    NotEven(String),
    /// Entry or map coefficient sits at a parity it is not allowed to.
    ParityViolation(String),
    /// A graded component would exceed the configured ambient-size cap.
    SizeCapExceeded { needed: usize, cap: usize },
    /// Ill-formed permutation, matrix shape or argument combination.
    Invalid(String),
    /// Classical-module data fails validation (associativity, unit, or
    /// the homomorphism property of the action).
    InvalidModule(String),
    /// Bialgebra data fails validation (comultiplication does not extend,
    /// or the counit does not kill the relations).
    InvalidBialgebra(String),
    /// Coaction data is not of the shape `delta(x^i) = sum_j M^i_j (x) x^j`.
    Shape(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::DegeneratePairing => write!(f, "pairing matrix is degenerate"),
            Error::NonHomogeneousRelation { index } => {
                write!(f, "relation vector {index} mixes parity blocks")
            }
            Error::NotIdempotent => write!(f, "matrix is not idempotent"),
            Error::NotEven(msg) => write!(f, "operator is not even: {msg}"),
            Error::ParityViolation(msg) => write!(f, "parity violation: {msg}"),
            Error::SizeCapExceeded { needed, cap } => {
                write!(
                    f,
                    "graded component needs ambient dimension {needed} > cap {cap}"
                )
            }
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::InvalidModule(msg) => write!(f, "invalid classical module: {msg}"),
            Error::InvalidBialgebra(msg) => write!(f, "invalid bialgebra: {msg}"),
            Error::Shape(msg) => write!(f, "coaction shape violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
