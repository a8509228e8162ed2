//! Explicit polyhedral subcones of the cone of sums of squares.
//!
//! A polynomial `f` of degree at most `2d` is tested against linear
//! inequalities in its coefficients; passing any of them proves `f` is a sum
//! of squares (or, for the top-degree rule, that `f + M` is for some constant
//! `M`). Acceptances can be cross-checked by a numerical Gram-matrix oracle,
//! by Budan–Fourier diagnostics on the comparison polynomial, and by moment
//! sequences of atomic measures.
//!
//! ```
//! use sos_cone::{conditions::check_theorem1, poly::parse};
//!
//! let f = parse("1 + x1^4 + x2^4 - x1^2*x2", 2, None).unwrap();
//! let report = check_theorem1(&f);
//! assert!(report.accepted);
//! ```

pub mod budan;
pub mod cli;
pub mod conditions;
pub mod error;
pub mod generate;
pub mod gram;
pub mod moment;
pub mod poly;
pub mod rational;

pub use error::{Error, Result};
