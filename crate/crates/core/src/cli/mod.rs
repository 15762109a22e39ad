//! Command-line front end: configuration, tabular output and the three
//! subcommands. Human-facing units are µm and pN.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{cmd_correction, cmd_force, cmd_validate, ExitCode};
pub use config::{ConfigError, Format, GapSpec, Overrides, RunConfig};
