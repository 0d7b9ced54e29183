//! Text front end for `smith-ideals`: a small declaration language for
//! complexes, DGAs, bimodules, maps and ideals, and the `smith` commands
//! that check and construct them.

pub mod commands;
pub mod document;
pub mod export;
pub mod resolve;

pub use commands::{run, Record, Rendered};
pub use document::{parse, Document, ParseError};
