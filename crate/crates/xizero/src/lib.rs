//! Command-line front end for `xizero-core`: run configuration, JSON/CSV
//! records, SVG plots and the acceptance self-test.

pub mod commands;
pub mod config;
pub mod oracle;
pub mod output;
pub mod plot;
pub mod selftest;

pub use commands::{dispatch, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
pub use config::{Format, RunConfig};
