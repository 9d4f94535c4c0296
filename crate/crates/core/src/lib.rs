//! Exact construction of Hermite-, Chebyshev-, Dickson- and Apostol-type
//! polynomial families from their generating functions and from their
//! explicit formulas, together with a catalog of executable identity checks.
//!
//! Everything is computed over the rationals with arbitrary-precision
//! integers; two sides of an identity are compared for exact equality of
//! canonical forms.
//!
//! ```
//! use polygen::closedform::{cs_poly, CsKind};
//! assert_eq!(cs_poly(CsKind::C, 2).to_string(), "x^2 - y^2");
//! ```

pub mod cli;
pub mod closedform;
pub mod error;
pub mod exact;
pub mod genfun;
pub mod identities;
pub mod series;

pub use error::{Error, Result};
pub use exact::{CPoly, MultiPoly, Rational, Var};
pub use series::{Convention, TruncSeries};
