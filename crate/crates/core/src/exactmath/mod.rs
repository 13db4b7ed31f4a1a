//! Exact arithmetic kernel.
//!
//! Rationals are `num_rational::BigRational`. On top of them sit dense
//! univariate polynomials over any exact [`Field`], sparse multivariate
//! polynomials in a fixed set of symbols, Sylvester resultants with
//! fraction-free elimination, squarefree decomposition, and reduction modulo
//! monic quadratic curve relations.

mod field;
mod mpoly;
mod relation;
mod resultant;
mod upoly;

pub use field::{Field, Quad};
pub use mpoly::{Monomial, MPoly, Var, NVARS};
pub use relation::RingRelation;
pub use resultant::{bareiss_determinant, resultant, upoly_resultant};
pub use upoly::{coprime_basis, UPoly};

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rat = num_rational::BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unsupported relation shape: {0}")]
    UnsupportedRelation(String),
    #[error("variable {0} occurs in neither operand")]
    MissingVariable(Var),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("division is not exact")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
}
