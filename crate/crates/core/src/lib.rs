//! Exact positivity toolkit for nonsingular simple G-projective varieties and
//! smooth complete toric varieties.
//!
//! Everything is computed with arbitrary precision integers and rationals.

pub mod blowup;
pub mod bundles;
pub mod cli;
pub mod cones;
pub mod error;
pub mod flag;
pub mod linalg;
pub mod model;
pub mod rational;
pub mod report;
pub mod toric;

pub use error::{Error, Result, Status};
pub use report::{ValidationReport, Violation};
