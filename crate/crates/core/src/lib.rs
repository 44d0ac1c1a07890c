pub mod algebra;
pub mod dunkl;
pub mod error;
pub mod group;
pub mod jacobi;
pub mod laurent;
pub mod opuc;
pub mod par;
pub mod realline;
pub mod roots;
pub mod tables;
pub mod verify;

pub use dunkl::{DunklOperator, EigenvalueTable};
pub use error::{Error, Result};
pub use group::{DihedralWord, ElementKind, GroupElement};
pub use jacobi::{JacobiParams, SievedFamily};
pub use laurent::{LaurentPoly, SamplePlan};
pub use opuc::{OpucFamily, VerblunskySequence};
pub use par::Execution;
pub use tables::{emit_table, Table, TableKind};
pub use verify::{CheckReport, Suite, SuiteConfig};
