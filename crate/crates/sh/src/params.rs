use std::collections::BTreeMap;

use tp_numerics::{Complex64, Grid1D, SpectralField};

use crate::ShError;

/// `λ(k, v) = -(1 - k²)² + v`.
pub fn dispersion(k: f64, v: f64) -> f64 {
    -(1.0 - k * k).powi(2) + v
}

/// `∫_0^h λ(k, v0 + εs) ds = λ(k, v0) h + ε h² / 2`.
pub fn linear_phase(k: f64, v0: f64, eps: f64, h: f64) -> f64 {
    dispersion(k, v0) * h + 0.5 * eps * h * h
}

/// Fourier coefficients `ν_m` of the source `μ(x) = Σ_m ν_m e^{imx}`.
///
/// Only `m ≥ 0` is stored; `ν_{-m} = conj(ν_m)` is implied, so the reality
/// condition holds by construction once `ν_0` is real.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Source {
    coefficients: BTreeMap<u32, Complex64>,
}

impl Source {
    pub fn none() -> Self {
        Self::default()
    }

    /// Builds a source from `(m, ν_m)` pairs with `m` of either sign.
    /// Pairs for `m` and `-m` must be conjugate.
    pub fn from_pairs(pairs: &[(i32, Complex64)]) -> Result<Self, ShError> {
        let mut coefficients = BTreeMap::new();
        for &(m, nu) in pairs {
            let (key, value) = if m < 0 { (m.unsigned_abs(), nu.conj()) } else { (m as u32, nu) };
            if key == 0 && nu.im.abs() > 1e-14 * nu.norm().max(1.0) {
                return Err(ShError::Config(format!("ν_0 = {nu} must be real")));
            }
            if let Some(prev) = coefficients.insert(key, value) {
                if (prev - value).norm() > 1e-14 * value.norm().max(1.0) {
                    return Err(ShError::Config(format!("ν_{{-{key}}} is not the conjugate of ν_{key}")));
                }
            }
        }
        Ok(Self { coefficients })
    }

    /// `ν_m` for any integer `m`.
    pub fn nu(&self, m: i32) -> Complex64 {
        let c = self.coefficients.get(&m.unsigned_abs()).copied().unwrap_or_default();
        if m < 0 {
            c.conj()
        } else {
            c
        }
    }

    /// Nonzero `(m, ν_m)` with `m ≥ 0`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.coefficients.iter().map(|(&m, &c)| (m, c)).filter(|(_, c)| c.norm() > 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.iter().next().is_none()
    }

    /// `μ` sampled as a spectral field.
    pub fn field(&self, grid: Grid1D) -> Result<SpectralField, ShError> {
        let mut modes = vec![Complex64::new(0.0, 0.0); grid.n_points()];
        for (m, nu) in self.iter() {
            let slot = grid
                .slot_of_wavenumber(m as f64)
                .ok_or_else(|| ShError::Config(format!("source mode m = {m} is not resolved by the grid")))?;
            if grid.is_nyquist(slot) {
                return Err(ShError::Config(format!("source mode m = {m} sits on the Nyquist frequency")));
            }
            modes[slot] = nu;
            if m == 0 {
                modes[slot].im = 0.0;
            } else {
                let mirror = grid.slot_of_wavenumber(-(m as f64)).expect("mirror mode exists");
                modes[mirror] = nu.conj();
            }
        }
        Ok(SpectralField::from_modes(grid, modes)?)
    }
}

/// Which nonlinear terms are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Nonlinearity {
    /// `-u³ + εμ`.
    #[default]
    Cubic,
    /// `εμ` only: the linear, inhomogeneous problem.
    Linear,
}

/// Parameters of one Swift–Hohenberg run.
#[derive(Debug, Clone)]
pub struct SHParams {
    eps: f64,
    source: Source,
    grid: Grid1D,
    mu: SpectralField,
    /// Largest admissible step.
    pub h_max: f64,
    pub nonlinearity: Nonlinearity,
    /// Keep the stored field of order one and carry its magnitude in a log
    /// scale, so that exponentially small solutions do not underflow.
    pub log_tracking: bool,
}

impl SHParams {
    /// Drifting problem with `ε ∈ (0, 1)`.
    pub fn new(eps: f64, source: Source, grid: Grid1D) -> Result<Self, ShError> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(ShError::Config(format!("eps must be in (0,1), got {eps}")));
        }
        Self::build(eps, source, grid)
    }

    /// Static problem: `ε = 0`, so both the drift and the source vanish.
    pub fn frozen(grid: Grid1D) -> Result<Self, ShError> {
        Self::build(0.0, Source::none(), grid)
    }

    fn build(eps: f64, source: Source, grid: Grid1D) -> Result<Self, ShError> {
        let mu = source.field(grid)?;
        Ok(Self { eps, source, grid, mu, h_max: 0.5, nonlinearity: Nonlinearity::Cubic, log_tracking: false })
    }

    pub fn with_nonlinearity(mut self, nonlinearity: Nonlinearity) -> Self {
        self.nonlinearity = nonlinearity;
        self
    }

    pub fn with_log_tracking(mut self, on: bool) -> Self {
        self.log_tracking = on;
        self
    }

    pub fn with_h_max(mut self, h_max: f64) -> Self {
        self.h_max = h_max;
        self
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// `μ` on the grid.
    pub fn mu(&self) -> &SpectralField {
        &self.mu
    }
}
