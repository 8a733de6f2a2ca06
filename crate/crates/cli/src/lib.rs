//! Harness around `sscurv-core`: built-in geometries, the JSON geometry
//! format, probe suites, the seeded fuzzer and report rendering.

pub mod builtins;
pub mod format;
pub mod fuzz;
pub mod report;
pub mod suite;
