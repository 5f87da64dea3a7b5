//! Configuration, orchestration and persistence for the `qscope` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod manifest;
pub mod run;

pub use config::{Config, ConfigError};
pub use manifest::{Manifest, OutputDir, MANIFEST_FILE, TIMINGS_FILE};
pub use run::{run, Command};
