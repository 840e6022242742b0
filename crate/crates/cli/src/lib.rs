//! Command-line front end: configuration, the `verify` pipeline and JSON reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod verify;

pub use config::Config;
pub use error::CliError;
pub use report::{merge, ReportDoc, TOOL_VERSION};
