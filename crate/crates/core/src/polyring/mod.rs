//! Integer polynomials: arithmetic, factorisation over ℤ, Sturm counts,
//! self-reciprocity and cyclotomic detection.

mod factor;
pub(crate) mod modp;
mod poly;
mod ratpoly;
mod roots;

pub use factor::{factor_over_z, Factorization};
pub use poly::IntPolynomial;
pub use ratpoly::RatPolynomial;
pub use roots::{
    cyclotomic_index, cyclotomic_polynomial, cyclotomic_profile, is_self_reciprocal, real_root_count,
    sturm_sequence, totient, RootSignature,
};
