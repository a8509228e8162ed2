//! Sparse multivariate polynomials with exact rational coefficients.

mod decompose;
mod exponent;
pub mod json;
mod polynomial;
mod text;

pub use decompose::{classify, decompose, DecomposeMode, Decomposition, EssentialKey, GammaClass};
pub use exponent::Exponent;
pub use polynomial::{default_half_degree, Polynomial};
pub use text::parse;

/// Canonical text, inverse of [`parse`] for a fixed `n` and `d`.
pub fn emit(f: &Polynomial) -> String {
    f.to_text()
}
