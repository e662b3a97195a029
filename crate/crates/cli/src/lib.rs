//! Command-line front end for the `stablespan` library.

pub mod args;
pub mod commands;
pub mod report;

pub use args::Cli;
pub use commands::{run, Outcome};
pub use report::{Report, Verdict};
