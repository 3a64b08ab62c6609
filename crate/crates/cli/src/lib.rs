//! Instance files, report serialization, and the command implementations
//! behind the `kummerlab` binary. Split out as a library so integration
//! tests can drive commands in-process.

pub mod commands;
pub mod instance;
pub mod report;
