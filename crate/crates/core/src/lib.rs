//! Zeta functions of finite graphs twisted by unitary local systems,
//! computed through four independent pipelines, plus voltage covers,
//! operator pushdown, heat traces on regular trees, and convergence
//! experiments for normalized determinants along cover sequences.

pub mod bigfloat;
pub mod cover;
pub mod error;
pub mod graph;
pub mod io;
pub mod geodesic;
pub mod l2det;
pub mod local_system;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod zeta;

pub use error::{Error, ErrorCategory, Result};
