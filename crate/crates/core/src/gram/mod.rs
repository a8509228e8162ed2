//! Numerical SOS certificates via Gram-matrix feasibility.

pub mod linalg;
mod oracle;
mod sample;

pub use linalg::{symmetric_eigen, Eigen, Matrix};
pub use oracle::{
    certify, GramCertificate, GramOracle, GramProblem, Group, OracleStatus, OracleVerdict,
    SosOracle, DEFAULT_MAX_ITER, DEFAULT_TOL, MAX_BASIS, STALL_WINDOW,
};
pub use sample::{sample_nonneg, NEGATIVITY_TOL};
