//! Exact algebra over ℚ.
//!
//! * [`Polynomial`]: polynomials in the terminal symbols.
//! * [`RationalFunction`]: their fraction field `K`, kept reduced.
//! * [`SystemPolynomial`]: polynomials in the grammar variables over `K`,
//!   ordered by the elimination order [`MonomialOrder`].
//! * Groebner bases ([`buchberger`], [`reduce_basis`]).
//! * Polynomials in `X1` alone: [`UniPolynomial`] over `K` and
//!   [`XPolynomial`] with polynomial coefficients.
//!
//! Everything is exact big-integer arithmetic.

use alloc::string::String;

use thiserror::Error;

mod groebner;
mod poly;
mod ratfun;
mod system;
mod univariate;

pub use groebner::{buchberger, poly_reduce, reduce_basis, reduced_groebner_basis, s_polynomial};
pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use system::{MonomialOrder, SystemPolynomial};
pub use univariate::{clear_denominators, UniPolynomial, XPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("the divisor does not divide the dividend")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("the denominator vanishes at the origin, so there is no power-series expansion")]
    NonUnitDenominatorAtOrigin,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}
