//! Delayed loss of stability of the trivial state.

use rayon::prelude::*;
use tp_numerics::{hul_norm_default, Grid1D};
use tp_sh::{dispersion, integrate, roll, IntegrateOptions, SHParams, SHState, Source};

use crate::{line_fit, ValidationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelayMode {
    /// Full nonlinear equation with `μ ≡ 0`.
    Full,
    /// Closed-form log-amplitude of one linear mode.
    LinearizedLog,
}

#[derive(Debug, Clone)]
pub struct DelayConfig {
    pub rho_in: f64,
    /// Norm at which the state counts as having left the trivial branch.
    pub threshold: f64,
    /// `H^θ_ul` norm of the initial roll at `v = -ρ_in`.
    pub initial_amplitude: f64,
    pub mode: DelayMode,
    /// Wavenumber followed in [`DelayMode::LinearizedLog`].
    pub k: f64,
    pub fast: Grid1D,
    pub h: f64,
    pub theta: u32,
    /// Solver steps between trace samples.
    pub observe_every: usize,
}

impl Default for DelayConfig {
    fn default() -> Self {
        Self {
            rho_in: 1.0,
            threshold: 1e-2,
            initial_amplitude: 1e-3,
            mode: DelayMode::Full,
            k: 1.0,
            fast: Grid1D::new(1, 32).expect("valid grid"),
            h: 0.05,
            theta: 1,
            observe_every: 10,
        }
    }
}

/// Smallest `ε` for which the full-mode trough `a₀ e^{-ρ_in²/2ε}` stays
/// clear of underflow.
pub fn min_full_eps(rho_in: f64) -> f64 {
    rho_in * rho_in / 600.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelayRecord {
    pub eps: f64,
    pub rho_in: f64,
    pub threshold: f64,
    /// First threshold crossing after `v = 0`; `None` when censored.
    pub v_exit: Option<f64>,
    /// No crossing up to `v = 2ρ_in`.
    pub censored: bool,
    /// `(v, ln ‖u‖)` samples.
    pub trace: Vec<(f64, f64)>,
    /// Slope of `ln ‖u(v)‖ - ln ‖u(-ρ_in)‖` against `(v² - ρ_in²)/2ε` on
    /// `v ≤ 0`; unity for the linear critical mode.
    pub kappa_minus: Option<f64>,
}

impl DelayRecord {
    fn from_trace(eps: f64, cfg: &DelayConfig, trace: Vec<(f64, f64)>) -> Self {
        let ln_th = cfg.threshold.ln();
        let ln_a0 = cfg.initial_amplitude.ln();
        let v_exit = if cfg.threshold < cfg.initial_amplitude {
            Some(-cfg.rho_in)
        } else {
            trace.windows(2).find_map(|w| {
                let ((v0, l0), (v1, l1)) = (w[0], w[1]);
                (v1 > 0.0 && l1 >= ln_th && (l0 < ln_th || v0 <= 0.0)).then(|| {
                    if l0 >= ln_th {
                        v1
                    } else {
                        v0 + (ln_th - l0) / (l1 - l0) * (v1 - v0)
                    }
                })
            })
        };
        let v_exit = v_exit.filter(|v| *v <= 2.0 * cfg.rho_in);
        let rho2 = cfg.rho_in * cfg.rho_in;
        let (x, y): (Vec<f64>, Vec<f64>) =
            trace.iter().filter(|(v, _)| *v <= 0.0).map(|&(v, l)| ((v * v - rho2) / (2.0 * eps), l - ln_a0)).unzip();
        let kappa_minus = line_fit(&x, &y).ok().map(|f| f.slope);
        Self {
            eps,
            rho_in: cfg.rho_in,
            threshold: cfg.threshold,
            censored: v_exit.is_none(),
            v_exit,
            trace,
            kappa_minus,
        }
    }
}

/// `ln a(v) - ln a₀ = [(v² - ρ²)/2 - c(v + ρ)]/ε` with `c = (1 - k²)²`,
/// the exact integral of `λ(k, v)` along `v = -ρ + εt`.
pub fn linear_log_gain(k: f64, rho_in: f64, eps: f64, v: f64) -> f64 {
    let c = -dispersion(k, 0.0);
    ((v * v - rho_in * rho_in) / 2.0 - c * (v + rho_in)) / eps
}

/// Exit value of the linear mode `k` in closed form:
/// `v = c + √((c + ρ)² + 2ε ln(θ/a₀))`.
pub fn linear_exit(k: f64, rho_in: f64, eps: f64, ln_ratio: f64) -> f64 {
    let c = -dispersion(k, 0.0);
    c + ((c + rho_in).powi(2) + 2.0 * eps * ln_ratio).sqrt()
}

fn linearized_record(eps: f64, cfg: &DelayConfig) -> DelayRecord {
    let ln_a0 = cfg.initial_amplitude.ln();
    let samples = 200;
    let trace: Vec<(f64, f64)> = (0..=samples)
        .map(|i| {
            let v = -cfg.rho_in + 3.0 * cfg.rho_in * i as f64 / samples as f64;
            (v, ln_a0 + linear_log_gain(cfg.k, cfg.rho_in, eps, v))
        })
        .collect();
    let mut rec = DelayRecord::from_trace(eps, cfg, trace);
    if cfg.threshold >= cfg.initial_amplitude {
        let v = linear_exit(cfg.k, cfg.rho_in, eps, (cfg.threshold / cfg.initial_amplitude).ln());
        rec.v_exit = (v > 0.0 && v <= 2.0 * cfg.rho_in).then_some(v);
        rec.censored = rec.v_exit.is_none();
    }
    rec
}

fn full_record(eps: f64, cfg: &DelayConfig) -> Result<DelayRecord, ValidationError> {
    if eps < min_full_eps(cfg.rho_in) {
        return Err(ValidationError::Domain(format!(
            "eps = {eps} is below ρ_in²/600 = {}; the trough would underflow",
            min_full_eps(cfg.rho_in)
        )));
    }
    let shape = roll(cfg.fast, 1.0)?;
    let u0 = shape.scaled(cfg.initial_amplitude / hul_norm_default(&shape, cfg.theta));
    let params = SHParams::new(eps, Source::none(), cfg.fast)?.with_log_tracking(true);
    let mut opts = IntegrateOptions::new(3.0 * cfg.rho_in / eps, cfg.h).observe_every(cfg.observe_every.max(1));
    opts.theta = cfg.theta;
    let traj = integrate(&SHState::new(u0, -cfg.rho_in), &params, &opts)?;
    let trace = traj.observations.iter().filter(|o| o.hul_norm > 0.0).map(|o| (o.v, o.hul_norm.ln())).collect();
    Ok(DelayRecord::from_trace(eps, cfg, trace))
}

/// One record per `ε`, in the order given.
pub fn delay_experiment(eps_list: &[f64], cfg: &DelayConfig) -> Result<Vec<DelayRecord>, ValidationError> {
    if !(cfg.rho_in > 0.0 && cfg.threshold > 0.0 && cfg.initial_amplitude > 0.0) {
        return Err(ValidationError::Config("ρ_in, threshold and initial amplitude must be positive".into()));
    }
    eps_list
        .par_iter()
        .map(|&eps| match cfg.mode {
            DelayMode::LinearizedLog => Ok(linearized_record(eps, cfg)),
            DelayMode::Full => full_record(eps, cfg),
        })
        .collect()
}
