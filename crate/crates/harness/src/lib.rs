//! Batch verification, file formats, reports and the command line for the
//! `ryser-core` algorithms.

pub mod batch;
pub mod checks;
pub mod io;
pub mod report;
pub mod suites;
pub mod universe;
