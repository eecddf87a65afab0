//! Weighted context-free grammars over commutative semirings and their
//! Parikh images.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * the grammar model, parse trees, derivations and structural analyses
//!   ([`grammar`], [`tree`], [`derivation`], [`analysis`]);
//! * an exact commutative-algebra kernel over the rationals: polynomials in
//!   the terminal symbols, their fraction field, polynomials in the grammar
//!   variables over that field and Groebner bases ([`algebra`]);
//! * algebraic systems in commuting variables and truncated power series
//!   ([`series`]);
//! * the construction of a Parikh-equivalent regular grammar for
//!   nonexpansive grammars ([`regularizer`]);
//! * the decision procedure for the Parikh property over the rationals
//!   ([`decider`]).

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod analysis;
pub mod decider;
pub mod derivation;
pub mod grammar;
pub mod monomial;
pub mod regularizer;
pub mod semiring;
pub mod series;
pub mod tree;

pub use grammar::{Grammar, GrammarError, Rule, Symbol};
pub use monomial::Monomial;
pub use semiring::{Natural, Rational, Semiring, SemiringKind, Tropical};
pub use series::{AlgebraicSystem, TruncatedSeries};
pub use tree::ParseTree;
