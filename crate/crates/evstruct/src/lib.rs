//! File formats and the command line for [`evstruct_core`].
//!
//! [`io`] reads and writes the model format and renders lattices as DOT,
//! JSON or plain text. [`cli`] is the `evstruct` binary.

pub mod cli;
pub mod io;

pub use evstruct_core as core;
pub use io::{export_dot, export_json, export_text, parse, serialize, ParseError};
