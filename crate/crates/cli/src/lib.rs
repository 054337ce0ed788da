//! Library half of the `schroder` binary: b-file handling, verification
//! suites and report rendering. The binary in `main.rs` is a thin argument
//! parser over these pieces, and the acceptance tests drive them directly.

pub mod bfile;
pub mod fixtures;
pub mod report;
pub mod suites;
pub mod table;
