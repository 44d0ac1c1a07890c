//! Verification suites. Each suite is a pure function of its configuration
//! and seed and returns a [`CheckReport`].

mod config;
mod ortho;
mod quadrature;
mod report;
mod spectral;
mod structure;
mod suite;

pub use config::SuiteConfig;
pub use ortho::{orthogonality_suite, selfadjoint_check, ADAPTIVE_TOLERANCE};
pub use quadrature::{circle_inner, gram, node_values, weight_degree, QuadratureGrid, MAX_NODES};
pub use report::{CheckReport, Detail, RunParams};
pub use spectral::{eigen_h, eigen_l, eigen_q, eigen_residual, eigen_y, measured_eigenvalue};
pub use structure::{cmv_suite, identity_suite};
pub use suite::{Suite, SELFADJOINT_PAIRS};
