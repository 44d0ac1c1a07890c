//! Dunkl-type operators over the dihedral group: construction, symbolic
//! composition, pointwise and exact application, and closed-form spectra.

mod build;
pub mod coeffs;
mod eigen;
mod operator;
mod rational;

pub use build::{
    build_h, build_h_hat_explicit, build_h_ultra, build_h_variant, build_k, build_l, build_y,
    conjugate_apply, conjugate_by_phi, Conjugate, HMode, LForm,
};
pub use eigen::EigenvalueTable;
pub use operator::{op_algebra, DunklOperator, OpKind, OperatorTerm, TermKey};
pub use rational::Rational;
