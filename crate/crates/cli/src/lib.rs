//! Command-line harness for the slow-passage experiments.
//!
//! Every command reads an optional TOML configuration, writes CSV and
//! plot-data files into an output directory, and records what it did in
//! `manifest.json` together with a hash of the fully defaulted
//! configuration. Identical configuration and seed give byte-identical CSVs.

mod config;
mod error;
mod manifest;
mod run;

pub use config::{parse_config, parse_config_str, resolve_out_dir, Command, ExperimentSpec, THIN_MARGIN};
pub use error::CliError;
pub use manifest::{RunManifest, RunStatus};
pub use run::run;
