//! Configuration, experiment orchestration and verification suites for the
//! `fracrd` command-line tool.

pub mod commands;
pub mod config;
pub mod suites;

pub use config::{echo, parse_config, ConfigError, RunConfig};
