//! Exact computation with finitely generated quadratic super-algebras.
//!
//! The crate provides, bottom up:
//!
//! - [`linalg`]: dense exact linear algebra over a field (canonical
//!   row-echelon subspaces, kernels, intersections, annihilators);
//! - [`superlin`]: parity formats, tensor-index bookkeeping and every
//!   Koszul-sign-carrying structural operator (signed permutations, dual
//!   pairings, super-(anti)symmetrizers);
//! - [`quadratic`]: quadratic super-algebras `TV/(R)`, idempotent
//!   presentations, graded components, the binary products and unary
//!   functors (Koszul dual, parity change, opposite, S/Λ/T);
//! - [`manin`]: matrices with degree-1 entries over a quadratic
//!   super-algebra, the Manin condition, universal Manin-matrix algebras,
//!   internal cohom and the coend comonoid;
//! - [`quantum`]: multiplicative matrices over a presented bialgebra,
//!   quantum representations and linear actions, intertwiners and the
//!   lift of classical modules;
//! - [`schema`]: the JSON workspace-file format shared with the CLI;
//! - [`fixtures`] and [`verify`]: seeded random fixture generation and the
//!   built-in identity suites.
//!
//! All core math is generic over the scalar type through the [`Scalar`]
//! trait. The canonical instantiation is arbitrary-precision rationals;
//! the [`Rat`] alias and the `Q*` type aliases below fix it. Identities
//! are tested with exact equality, so an exact field is required for the
//! library's guarantees to be meaningful.

pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod manin;
pub mod quadratic;
pub mod quantum;
pub mod scalar;
pub mod schema;
pub mod superlin;
pub mod verify;

pub use error::Error;
pub use scalar::Scalar;

/// Arbitrary-precision rational scalar, the canonical ground field.
pub type Rat = num_rational::BigRational;

pub type QMatrix = linalg::Matrix<Rat>;
pub type QSubspace = linalg::Subspace<Rat>;
pub type QAlgebra = quadratic::QuadraticSuperAlgebra<Rat>;
pub type QIdempotent = quadratic::Idempotent<Rat>;
pub type QAlgebraMatrix = manin::AlgebraMatrix<Rat>;
pub type QBialgebra = quantum::BialgebraPresentation<Rat>;
pub type QRepresentation = quantum::QuantumRepresentation<Rat>;

/// Default cap on the ambient dimension `d^n` of a graded component.
pub const DEFAULT_SIZE_CAP: usize = 20_000;

/// Shorthand used throughout the tests and the CLI: a rational from an
/// integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// A rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}
