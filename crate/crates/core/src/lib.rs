//! Exact computation of Bieri–Strebel invariants for cyclic modules
//! `A = ZQ/(f)` over `Q = Z^s`, together with the ring-theoretic and
//! rigidity checks that decide whether `(ZQ/(f)) ⋊ Q` can act
//! self-similarly.
//!
//! Everything is exact: integers are arbitrary precision, polyhedral
//! computations use integer and rational arithmetic only, and series
//! coefficients live in `Q` or a single simple algebraic extension.

pub mod algebra;
pub mod error;
pub mod polyhedra;
pub mod puiseux;
pub mod report;
pub mod ring;
pub mod tropical;

pub use algebra::{CoefficientValuation, LaurentPolynomial, ResiduePolynomial};
pub use error::{Error, Result};
