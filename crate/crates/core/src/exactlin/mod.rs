//! Exact linear algebra over ℤ and ℚ: determinants, characteristic
//! polynomials, inverses, Smith and Hermite forms, integer kernels.

mod lattice;
mod matrix;
mod rational;
mod smith;

pub use lattice::{hermite_rows, integer_kernel, lll_reduce};
pub use matrix::IntMatrix;
pub use rational::RatMatrix;
pub use smith::{smith_z, SmithDecompositionZ};
