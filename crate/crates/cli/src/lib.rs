//! Command-line front end: argument types, JSON inputs, report rendering.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod parse;

pub use error::CliError;
