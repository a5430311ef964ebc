//! Generalized inverses in rings with involution: Moore-Penrose, group,
//! Drazin, core-type inverses, inverses along an element, and the w-core and
//! dual v-core inverses, over exact and floating-point scalar domains, plus a
//! brute-force oracle for finite *-rings.

pub mod along;
pub mod certificate;
pub mod classical;
pub mod error;
pub mod io;
pub mod exec;
pub mod matrix;
pub mod oracle;
pub mod regular;
pub mod scalar;
pub mod wcore;
pub mod word;

pub use certificate::{Certificate, InverseKind, InverseResult, Outcome};
pub use error::{Error, Result};
pub use exec::Execution;
pub use matrix::{StarMatrix, Tolerance};
pub use scalar::{Domain, Scalar};
pub use wcore::{dual_v_core, w_core, Route, RouteSelector};
