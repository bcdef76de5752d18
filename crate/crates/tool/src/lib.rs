//! File formats, verification suites and the `omega` command line on top of
//! `omega-core`.

pub mod cli;
mod error;
pub mod formats;
pub mod spec_file;
pub mod verify;

pub use error::ToolError;
