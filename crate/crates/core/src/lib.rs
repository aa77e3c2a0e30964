//! Functional decomposition of univariate polynomials over the rationals.
//!
//! Everything is exact: coefficients are big rationals and every identity is
//! checked by equality of normalized coefficient vectors.

pub mod appendix_comb;
pub mod chebyshev;
pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod forms;
pub mod io_cli;
pub mod iterates;
pub mod modp;
pub mod poly;
pub mod ritt;

pub use error::{Error, Result};
pub use poly::{Linear, Poly, Rational};
