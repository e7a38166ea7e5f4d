//! Exact arithmetic: scalar domains, univariate polynomials, dense matrices.

pub mod matrix;
pub mod poly;
pub mod scalar;

pub use matrix::{span_rank, Matrix};
pub use poly::Polynomial;
pub use scalar::{Domain, Scalar};
