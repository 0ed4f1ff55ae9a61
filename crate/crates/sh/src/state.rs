use tp_numerics::{apply_propagator, dealiased_cube, Complex64, SpectralField};

use crate::params::{linear_phase, Nonlinearity};
use crate::{SHParams, ShError};

/// Solution at fast time `t`.
///
/// The physical field is `e^{log_scale} · u`. Without log tracking
/// `log_scale` stays zero. The bifurcation variable is affine in `t` and is
/// never integrated numerically.
#[derive(Debug, Clone)]
pub struct SHState {
    pub u: SpectralField,
    pub t: f64,
    /// `v` at `t = 0`.
    pub v0: f64,
    pub log_scale: f64,
}

impl SHState {
    pub fn new(u: SpectralField, v0: f64) -> Self {
        Self { u, t: 0.0, v0, log_scale: 0.0 }
    }

    /// Starts at time `t` with `v(t) = v`.
    pub fn at(u: SpectralField, t: f64, v: f64, eps: f64) -> Self {
        Self { u, t, v0: v - eps * t, log_scale: 0.0 }
    }

    pub fn v(&self, eps: f64) -> f64 {
        self.v0 + eps * self.t
    }

    /// The physical field (may underflow to zero under log tracking).
    pub fn physical(&self) -> SpectralField {
        if self.log_scale == 0.0 {
            self.u.clone()
        } else {
            self.u.scaled(self.log_scale.exp())
        }
    }

    /// `ln max|u|`, valid even when `max|u|` underflows.
    pub fn ln_max_abs(&self) -> f64 {
        self.u.max_abs().ln() + self.log_scale
    }

    /// Moves magnitude between the field and its log scale so that the
    /// stored field is of order one while the physical field is small.
    fn renormalise(&mut self) {
        let m = self.u.max_abs();
        if m == 0.0 || !m.is_finite() {
            return;
        }
        let target = (self.log_scale + m.ln()).min(0.0);
        let factor = (self.log_scale - target).exp();
        if factor != 1.0 {
            self.u = self.u.scaled(factor);
            self.log_scale = target;
        }
    }
}

/// `N(w) = -e^{2s} w³ + e^{-s} ε μ` for the stored field `w`.
fn nonlinear(w: &SpectralField, log_scale: f64, params: &SHParams) -> SpectralField {
    let mut out = match params.nonlinearity {
        Nonlinearity::Cubic => dealiased_cube(w).scaled(-(2.0 * log_scale).exp()),
        Nonlinearity::Linear => SpectralField::zeros(*w.grid()),
    };
    if params.eps() != 0.0 && !params.source().is_zero() {
        out = out.add_scaled(params.mu(), params.eps() * (-log_scale).exp());
    }
    out
}

/// One exponential midpoint step of length `h`:
///
/// ```text
/// u_mid = E(t, t+h/2) [u + (h/2) N(u)]
/// u'    = E(t, t+h) u + h E(t+h/2, t+h) N(u_mid)
/// ```
///
/// where `E` is the exact linear evolution along the drift.
pub fn step(state: &SHState, params: &SHParams, h: f64) -> Result<SHState, ShError> {
    if !(h >= 0.0 && h <= params.h_max) {
        return Err(ShError::Config(format!("step {h} outside [0, h_max = {}]", params.h_max)));
    }
    if h == 0.0 {
        return Ok(state.clone());
    }
    let eps = params.eps();
    let v_n = state.v(eps);
    let v_mid = v_n + 0.5 * eps * h;
    let s = state.log_scale;

    let half = |v: f64| move |k: f64| Complex64::new(linear_phase(k, v, eps, 0.5 * h), 0.0);
    let n0 = nonlinear(&state.u, s, params);
    let predictor = apply_propagator(&state.u.add_scaled(&n0, 0.5 * h), half(v_n));
    let n_mid = nonlinear(&predictor.field, s, params);
    let linear = apply_propagator(&state.u, |k| Complex64::new(linear_phase(k, v_n, eps, h), 0.0));
    let forced = apply_propagator(&n_mid, half(v_mid));
    let u = linear.field.add_scaled(&forced.field, h);

    if !u.is_finite() || predictor.saturated || linear.saturated || forced.saturated {
        return Err(ShError::Integration {
            t: state.t,
            max_abs: state.u.max_abs() * s.exp(),
            energy: state.u.energy() * (2.0 * s).exp(),
            last: Box::new(state.clone()),
        });
    }
    let mut next = SHState { u, t: state.t + h, v0: state.v0, log_scale: s };
    if params.log_tracking {
        next.renormalise();
    }
    Ok(next)
}
