//! Command-line plumbing around `bqtool-core`: input parsing, grid scans and
//! the PPM, CSV, DOT and JSON writers.

pub mod dot;
pub mod json;
pub mod parse;
pub mod ppm;
pub mod scan;
pub mod table;
