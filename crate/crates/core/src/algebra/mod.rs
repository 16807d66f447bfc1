//! Exact and floating-point linear algebra over the Gaussian rationals.

pub mod gaussian;
pub mod matrix;
pub mod pfaffian;
pub mod poly;

pub use gaussian::{GaussianRational, Rational};
pub use matrix::{det_symbolic, exact_rank, numeric_rank, AlternatingForm, Matrix};
pub use pfaffian::{pfaffian_exact, pfaffian_numeric, pfaffian_symbolic};
pub use poly::{Monomial, MultiPoly, RealPoly};
