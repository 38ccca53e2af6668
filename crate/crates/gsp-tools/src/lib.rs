//! Command-line companion to `gsp-core`: JSON wire formats, seeded
//! verification suites with machine-readable reports, and the `gsp` binary
//! entry point.

pub mod error;
pub mod json;
pub mod report;
pub mod suites;
