//! Exact analysis of toral automorphisms: unimodular integer matrices, their
//! symmetry groups, reversing symmetries and periodic orbits.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod exactlin;
pub mod invariants;
pub mod polyring;
pub mod report;
pub mod reversibility;
mod search;
pub mod symmetry;

pub use error::{Error, Result};
pub use exactlin::{IntMatrix, RatMatrix};
pub use polyring::IntPolynomial;
