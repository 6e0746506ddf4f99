//! Two-grid analysis toolkit: error propagation operators, the complement
//! spectral identity for `B A`, and optimal interpolation operators for the
//! convergence rate, energy norm and condition number objectives.

pub mod error;
pub mod linalg;
pub mod matching;
pub mod mm;
pub mod optimal;
pub mod problems;
pub mod random;
pub mod runner;
pub mod smoothers;
pub mod spectral;
pub mod twogrid;

pub use error::{Error, Result};
pub use linalg::{Matrix, C64};
