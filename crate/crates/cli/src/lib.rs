//! Command-line front end for the `secondary` engine: expression parsing,
//! evaluation, serialization and the `secsteen` subcommands.

pub mod commands;
pub mod config;
pub mod doc;
pub mod error;
pub mod eval;
pub mod expr;
pub mod report;

pub use error::{CliError, Result};
