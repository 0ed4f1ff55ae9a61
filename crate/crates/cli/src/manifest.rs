use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::{CliError, ExperimentSpec};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunStatus {
    pub name: String,
    pub ok: bool,
    pub message: String,
}

/// What a command did and what it wrote.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub spec_hash: String,
    pub code_version: String,
    pub seed: u64,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub warnings: Vec<String>,
    pub runs: Vec<RunStatus>,
    /// Paths relative to the output directory, in the order written.
    pub files: Vec<String>,
}

fn now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64())
}

impl RunManifest {
    pub fn start(spec: &ExperimentSpec) -> Self {
        Self {
            command: spec.command.to_string(),
            spec_hash: spec.hash(),
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: spec.seed,
            started_unix: now(),
            finished_unix: 0.0,
            warnings: spec.warnings.clone(),
            runs: Vec::new(),
            files: Vec::new(),
        }
    }

    pub fn record(&mut self, name: &str, result: Result<String, CliError>) {
        let (ok, message) = match result {
            Ok(m) => (true, m),
            Err(e) => (false, e.to_string()),
        };
        self.runs.push(RunStatus { name: name.to_string(), ok, message });
    }

    pub fn all_ok(&self) -> bool {
        self.runs.iter().all(|r| r.ok)
    }

    /// Stamps the end time and writes `manifest.json` into `dir`.
    pub fn finish(&mut self, dir: &Path) -> Result<(), CliError> {
        self.finished_unix = now();
        let text = serde_json::to_string_pretty(self).map_err(|e| CliError::Config(e.to_string()))?;
        std::fs::write(dir.join("manifest.json"), text + "\n")?;
        Ok(())
    }
}
