//! Experiment configuration: a TOML file with a few tables, every key
//! optional.
//!
//! ```toml
//! eps = 1e-3
//! order = 5
//!
//! [sections]
//! rho_in = 1.0
//! zeta = 0.1
//!
//! [source]
//! nu = [[2e-3, 0.0], [1e-3, 5e-4]]
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tp_charts::SectionSpec;
use tp_modulation::DampingConvention;
use tp_numerics::{Complex64, Grid1D};
use tp_validation::{min_full_eps, DelayConfig, DelayMode, PassageSetup};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Swift–Hohenberg run from `Δ^in` to `Δ^out`.
    Simulate,
    /// Blow-up approximation across the three charts.
    Approx,
    /// Both, compared at `Δ^mid`.
    Compare,
    /// Dynamic error, mid-section amplitudes and delays over a list of `ε`.
    Sweep,
    /// Hierarchy document.
    Derive,
    /// Acceptance suite.
    Verify,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Command::Simulate => "simulate",
            Command::Approx => "approx",
            Command::Compare => "compare",
            Command::Sweep => "sweep",
            Command::Derive => "derive",
            Command::Verify => "verify",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawSections {
    rho_in: f64,
    /// Defaults to `ζ^{-1/2}`.
    rho_mid: Option<f64>,
    rho_out: f64,
    zeta: f64,
    k: f64,
}

impl Default for RawSections {
    fn default() -> Self {
        let s = SectionSpec::default();
        Self { rho_in: s.rho_in, rho_mid: None, rho_out: s.rho_out, zeta: s.zeta, k: s.k }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawGrid {
    periods: usize,
    points: usize,
    h_sh: f64,
    h_env: f64,
}

impl Default for RawGrid {
    fn default() -> Self {
        let s = PassageSetup::default();
        Self { periods: 1, points: s.fast.n_points(), h_sh: s.h_sh, h_env: s.h_env }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawSource {
    /// `[re, im]` pairs for `ν_0, ν_1, …`.
    nu: Vec<[f64; 2]>,
}

impl Default for RawSource {
    fn default() -> Self {
        Self { nu: PassageSetup::default().nu.iter().map(|c| [c.re, c.im]).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawInitial {
    a11: [f64; 2],
    /// Seeded perturbation of `u*`, relative to `max|Ψ*|`.
    perturbation: f64,
}

impl Default for RawInitial {
    fn default() -> Self {
        let a = PassageSetup::default().a11;
        Self { a11: [a.re, a.im], perturbation: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawSweep {
    eps: Vec<f64>,
    seeds: Vec<u64>,
}

impl Default for RawSweep {
    fn default() -> Self {
        Self { eps: vec![4e-3, 2e-3, 1e-3, 5e-4], seeds: vec![1, 2] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawDelay {
    threshold: f64,
    amplitude: f64,
}

impl Default for RawDelay {
    fn default() -> Self {
        let d = DelayConfig::default();
        Self { threshold: d.threshold, amplitude: d.initial_amplitude }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawConfig {
    eps: f64,
    order: u32,
    theta: u32,
    seed: u64,
    /// `exact` or `as-printed`.
    convention: String,
    sections: RawSections,
    grid: RawGrid,
    source: RawSource,
    initial: RawInitial,
    sweep: RawSweep,
    delay: Option<RawDelay>,
}

impl Default for RawConfig {
    fn default() -> Self {
        Self {
            eps: 1e-3,
            order: 5,
            theta: 1,
            seed: 0,
            convention: "exact".into(),
            sections: RawSections::default(),
            grid: RawGrid::default(),
            source: RawSource::default(),
            initial: RawInitial::default(),
            sweep: RawSweep::default(),
            delay: None,
        }
    }
}

/// A validated experiment.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub command: Command,
    pub eps: f64,
    pub order: u32,
    pub seed: u64,
    pub perturbation: f64,
    pub setup: PassageSetup,
    pub sweep_eps: Vec<f64>,
    pub sweep_seeds: Vec<u64>,
    pub delay: DelayConfig,
    pub out_dir: PathBuf,
    pub workers: Option<usize>,
    /// Non-fatal remarks about the configuration.
    pub warnings: Vec<String>,
    raw: RawConfig,
}

impl ExperimentSpec {
    pub fn sections(&self) -> &SectionSpec {
        &self.setup.sections
    }

    /// Replaces the configured seed (the `--seed` flag).
    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
        self.raw.seed = seed;
    }

    /// Replaces the configured order (the `--order` flag of `derive`).
    pub fn set_order(&mut self, order: u32) -> Result<(), CliError> {
        if !(4..=6).contains(&order) {
            return Err(CliError::Domain(format!("order must be 4, 5 or 6, got {order}")));
        }
        self.order = order;
        self.raw.order = order;
        Ok(())
    }

    /// The command and the fully defaulted configuration, as TOML.
    pub fn canonical(&self) -> String {
        let body = toml::to_string(&self.raw).expect("plain data serialises");
        format!("command = \"{}\"\n{body}", self.command)
    }

    /// SHA-256 of [`ExperimentSpec::canonical`].
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Workers for a fan-out over `members` items.
    pub fn worker_count(&self, members: usize) -> usize {
        let available = std::thread::available_parallelism().map_or(1, |n| n.get());
        self.workers.unwrap_or(available).clamp(1, members.max(1))
    }
}

fn check_eps(eps: f64) -> Result<(), CliError> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(CliError::Domain(format!("eps must be in (0,1), got {eps}")))
    }
}

/// Smallest delay margin `ω = 1 - ρ_out/ρ_in` considered comfortable.
pub const THIN_MARGIN: f64 = 0.1;

/// Parses TOML text; `command` decides which checks apply.
pub fn parse_config_str(text: &str, command: Command) -> Result<ExperimentSpec, CliError> {
    let mut raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))?;
    raw.sections.rho_mid.get_or_insert(raw.sections.zeta.powf(-0.5));

    check_eps(raw.eps)?;
    for &e in &raw.sweep.eps {
        check_eps(e)?;
    }
    if !(4..=6).contains(&raw.order) {
        return Err(CliError::Domain(format!("order must be 4, 5 or 6, got {}", raw.order)));
    }
    let convention = match raw.convention.as_str() {
        "exact" => DampingConvention::Exact,
        "as-printed" => DampingConvention::AsPrinted,
        other => {
            return Err(CliError::Domain(format!("convention must be \"exact\" or \"as-printed\", got {other:?}")))
        }
    };
    let s = &raw.sections;
    let sections = SectionSpec {
        rho_in: s.rho_in,
        rho_mid: s.rho_mid.expect("filled above"),
        rho_out: s.rho_out,
        zeta: s.zeta,
        k: s.k,
    };
    sections.validate().map_err(|e| CliError::Domain(e.to_string()))?;
    let passage = matches!(command, Command::Simulate | Command::Approx | Command::Compare | Command::Sweep);
    if passage {
        let limit = sections.max_eps();
        if let Some(e) = std::iter::once(raw.eps).chain(raw.sweep.eps.iter().copied()).find(|e| *e > limit) {
            return Err(CliError::Domain(format!(
                "eps = {e} exceeds rho_in^2 zeta = {limit}; the entry lies outside chart K1"
            )));
        }
    }
    if !(raw.grid.h_sh > 0.0 && raw.grid.h_env > 0.0) {
        return Err(CliError::Domain("grid steps h_sh and h_env must be positive".into()));
    }
    if !(raw.initial.perturbation >= 0.0) {
        return Err(CliError::Domain("initial.perturbation must be non-negative".into()));
    }
    let fast = Grid1D::new(raw.grid.periods, raw.grid.points).map_err(|e| CliError::Domain(e.to_string()))?;

    let raw_delay = raw.delay.clone().unwrap_or_default();
    if !(raw_delay.threshold > 0.0 && raw_delay.amplitude > 0.0) {
        return Err(CliError::Domain("delay threshold and amplitude must be positive".into()));
    }
    let mut warnings = Vec::new();
    let delay_requested = raw.delay.is_some() || command == Command::Sweep;
    let margin = sections.delay_margin();
    if delay_requested && margin < THIN_MARGIN {
        warnings.push(format!(
            "delay margin omega = 1 - rho_out/rho_in = {margin:.3} is below {THIN_MARGIN}: the exponential-smallness window at Delta^out is thin"
        ));
    }
    if command == Command::Sweep {
        if let Some(e) = raw.sweep.eps.iter().find(|e| **e < min_full_eps(sections.rho_in)) {
            warnings.push(format!(
                "eps = {e} is below rho_in^2/600; the full-system delay run skips it (the linearized delay still runs)"
            ));
        }
    }

    let setup = PassageSetup {
        sections,
        nu: raw.source.nu.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        a11: Complex64::new(raw.initial.a11[0], raw.initial.a11[1]),
        fast,
        h_sh: raw.grid.h_sh,
        h_env: raw.grid.h_env,
        theta: raw.theta,
        convention,
    };
    let delay = DelayConfig {
        rho_in: sections.rho_in,
        threshold: raw_delay.threshold,
        initial_amplitude: raw_delay.amplitude,
        mode: DelayMode::Full,
        k: 1.0,
        fast,
        h: 0.05,
        theta: raw.theta,
        observe_every: 10,
    };
    Ok(ExperimentSpec {
        command,
        eps: raw.eps,
        order: raw.order,
        seed: raw.seed,
        perturbation: raw.initial.perturbation,
        setup,
        sweep_eps: raw.sweep.eps.clone(),
        sweep_seeds: raw.sweep.seeds.clone(),
        delay,
        out_dir: PathBuf::from("out"),
        workers: None,
        warnings,
        raw,
    })
}

/// Reads and validates a configuration file.
pub fn parse_config(path: &Path, command: Command) -> Result<ExperimentSpec, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config_str(&text, command)
}

/// `TP_OUT_DIR` wins over `--out`, which wins over `out`.
pub fn resolve_out_dir(cli: Option<&Path>, env: Option<&str>) -> PathBuf {
    match (env.filter(|s| !s.is_empty()), cli) {
        (Some(e), _) => PathBuf::from(e),
        (None, Some(c)) => c.to_path_buf(),
        (None, None) => PathBuf::from("out"),
    }
}
