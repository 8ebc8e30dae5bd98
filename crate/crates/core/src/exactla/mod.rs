//! Exact linear algebra over the rationals and the Gaussian rationals.

mod bareiss;
mod echelon;
mod markowitz;
mod matrix;
mod scalar;
mod sparse;

pub use echelon::{Echelon, Insert};
pub use matrix::{ExactMatrix, Solution};
pub use scalar::{rat, ratio, Field, Rational, Scalar};
pub use sparse::{linear_combination, SparseVec};
