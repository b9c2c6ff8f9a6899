//! Parsing and rendering for the command-line front end, exposed as a
//! library so the round-trip laws can be tested directly.

pub mod parse;
pub mod render;
