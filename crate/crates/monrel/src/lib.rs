//! File formats, verification suites and the command-line driver built on
//! `monrel-core`.

pub mod cli;
pub mod format;
pub mod suites;
