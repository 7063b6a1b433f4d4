//! Command-line front end for `hyperkin`: motion documents in, CSV traces,
//! conjugate points, verification reports and SVG plots out.
//!
//! Exit codes: 0 success, 1 failed verification, 2 bad input or IO,
//! 3 every sample degenerate, 4 geometric failure.

pub mod commands;
pub mod document;
pub mod error;
pub mod format;
pub mod plot;
pub mod simulate;
pub mod suites;

pub use document::{load, LoadedDocument, MotionDocument};
pub use error::CliError;
