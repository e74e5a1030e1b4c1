//! Parsing and rendering for the `stokern` command-line tool, exposed as a
//! library so the format itself can be tested directly.

pub mod text;
