//! Expression syntax, JSON documents and the `rga` command line.

pub mod commands;
pub mod doc;
pub mod parse;

pub use commands::{run, Outcome};
