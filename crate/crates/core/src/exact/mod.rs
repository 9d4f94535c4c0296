//! Exact scalars and sparse multivariate polynomials.
//!
//! The coefficient field is [`Rational`] (arbitrary-precision). Polynomials
//! live over the fixed alphabet described by [`Var`]; the symbol `s` models
//! `sqrt(1 - x^2)` through the rewrite `s^2 -> 1 - x^2` (see
//! [`MultiPoly::reduce_s`]).

mod cpoly;
mod json;
mod poly;
mod rational;
mod value;
mod var;

pub use cpoly::CPoly;
pub use json::{CPolyJson, PolyJson, TermJson};
pub use poly::{poly_arith, Monomial, MultiPoly, PolyOp};
pub use rational::{binomial, factorial, falling_factorial, parse_rational, pow2, rat, Rational};
pub use value::{Value, ValueJson};
pub use var::{Var, MAX_TUPLE, NVARS};
