//! Exact representation theory of gl(m|n) and its quantum deformation.

pub mod error;
pub mod export;
pub mod fuzzing;
pub mod glmn;
pub mod linalg;
pub mod module;
pub mod qfield;
pub mod qvcs;
pub mod report;
pub mod superalg;
pub mod uq;
pub mod vcs_classical;

pub use error::{Error, Result};
pub use qfield::QScalar;
