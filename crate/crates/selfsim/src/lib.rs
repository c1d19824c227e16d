//! Definition files, group lookup and report formats for the `selfsim`
//! command-line tool.

pub mod deffile;
pub mod groupspec;
pub mod report;

pub use deffile::parse;
pub use groupspec::{resolve, SpecError};
