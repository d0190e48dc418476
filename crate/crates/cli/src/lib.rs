//! JSON formats and the `ultrauniform` command-line front end.
//!
//! Exit status: 0 when the command succeeds or its verdict is true, 1 when
//! the verdict is false, 2 on malformed input or violated preconditions.

pub mod commands;
pub mod error;
pub mod json;

pub use commands::{run, run_with, Context, EXIT_FALSE, EXIT_INPUT, EXIT_OK, SEED_ENV};
pub use error::CliError;
pub use json::Document;
