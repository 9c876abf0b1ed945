//! Manifest formats, reports and subcommands of the `morita-lab` tool.

pub mod cli;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod manifest;
pub mod report;

pub use cli::Cli;
pub use commands::Run;
pub use error::{CliError, CliResult};
pub use manifest::{Kind, Manifest, SCHEMA_VERSION};
pub use report::{Report, Status};
