//! Expression parsing and evaluation for the `voa` command-line driver.

pub mod eval;
pub mod parser;
