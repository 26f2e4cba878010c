//! Library surface of the batch front-end (shared with the binary and its
//! integration tests).

pub mod commands;
pub mod config;
pub mod error;
pub mod graphfile;

pub use config::ExperimentConfig;
pub use error::{CliError, ErrorKind};
