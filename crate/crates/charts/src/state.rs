use tp_modulation::{ChartId, ChartPoint};

use crate::error::domain;
use crate::ChartError;

/// A point of the blown-up space in one of the three affine charts, together
/// with the chart-local time at which it was reached.
///
/// Blowing down gives `(v, ε)`: `(-r₁², r₁⁴ε₁)` in K1, `(r₂²v₂, r₂⁴)` in K2
/// and `(r₃², r₃⁴ε₃)` in K3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartState {
    K1 { r1: f64, eps1: f64, t: f64 },
    K2 { v2: f64, r2: f64, t: f64 },
    K3 { r3: f64, eps3: f64, t: f64 },
}

impl ChartState {
    pub fn chart(&self) -> ChartId {
        match self {
            ChartState::K1 { .. } => ChartId::K1,
            ChartState::K2 { .. } => ChartId::K2,
            ChartState::K3 { .. } => ChartId::K3,
        }
    }

    /// The radial coordinate `r_l`.
    pub fn radius(&self) -> f64 {
        match *self {
            ChartState::K1 { r1, .. } => r1,
            ChartState::K2 { r2, .. } => r2,
            ChartState::K3 { r3, .. } => r3,
        }
    }

    pub fn t_local(&self) -> f64 {
        match *self {
            ChartState::K1 { t, .. } | ChartState::K2 { t, .. } | ChartState::K3 { t, .. } => t,
        }
    }

    pub fn with_t_local(self, t_new: f64) -> Self {
        match self {
            ChartState::K1 { r1, eps1, .. } => ChartState::K1 { r1, eps1, t: t_new },
            ChartState::K2 { v2, r2, .. } => ChartState::K2 { v2, r2, t: t_new },
            ChartState::K3 { r3, eps3, .. } => ChartState::K3 { r3, eps3, t: t_new },
        }
    }

    /// `(v, ε)` in the original variables.
    pub fn blow_down(&self) -> (f64, f64) {
        match *self {
            ChartState::K1 { r1, eps1, .. } => (-r1 * r1, r1.powi(4) * eps1),
            ChartState::K2 { v2, r2, .. } => (r2 * r2 * v2, r2.powi(4)),
            ChartState::K3 { r3, eps3, .. } => (r3 * r3, r3.powi(4) * eps3),
        }
    }

    /// The position along the chart flow seen by the envelope equations.
    pub fn point(&self) -> ChartPoint {
        match *self {
            ChartState::K1 { eps1, .. } => ChartPoint::K1 { eps1 },
            ChartState::K2 { v2, .. } => ChartPoint::K2 { v2 },
            ChartState::K3 { eps3, .. } => ChartPoint::K3 { eps3 },
        }
    }
}

/// Section geometry `Δ^in: v = -ρ_in`, `Δ^mid: v = ρ_mid ε^{1/2}`,
/// `Δ^out: v = ρ_out`, plus the chart boundary `ζ` (the value of `ε₁` at
/// the K1 exit and of `ε₃` at the K3 entry) and the initial-data bound `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionSpec {
    pub rho_in: f64,
    pub rho_mid: f64,
    pub rho_out: f64,
    pub zeta: f64,
    pub k: f64,
}

impl Default for SectionSpec {
    fn default() -> Self {
        let zeta: f64 = 0.1;
        Self { rho_in: 1.0, rho_mid: zeta.powf(-0.5), rho_out: 0.5, zeta, k: 0.1 }
    }
}

impl SectionSpec {
    /// Defaults with `ρ_mid = ζ^{-1/2}`.
    pub fn with_zeta(zeta: f64) -> Self {
        Self { zeta, rho_mid: zeta.powf(-0.5), ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), ChartError> {
        for (name, v) in [
            ("rho_in", self.rho_in),
            ("rho_mid", self.rho_mid),
            ("rho_out", self.rho_out),
            ("zeta", self.zeta),
            ("k", self.k),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// `ω` in `ρ_out/ρ_in = 1 - ω`; the delay results need `ω > 0`.
    pub fn delay_margin(&self) -> f64 {
        1.0 - self.rho_out / self.rho_in
    }

    /// Largest `ε` for which the K1 entry `ε₁* = ε/ρ_in²` is inside the chart.
    pub fn max_eps(&self) -> f64 {
        self.rho_in * self.rho_in * self.zeta
    }

    /// Physical time from `Δ^in` to `Δ^mid`.
    pub fn t_mid(&self, eps: f64) -> f64 {
        (self.rho_in + self.rho_mid * eps.sqrt()) / eps
    }

    /// Physical time from `Δ^in` to `Δ^out`.
    pub fn t_out(&self, eps: f64) -> f64 {
        (self.rho_in + self.rho_out) / eps
    }
}
