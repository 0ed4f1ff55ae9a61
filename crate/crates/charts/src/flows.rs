//! Closed-form base flows. In every chart the scalar dynamics decouple from
//! the envelopes and integrate explicitly.

use crate::error::domain;
use crate::{ChartError, ChartState};

/// Entry chart: `r₁' = -r₁ε₁/2`, `ε₁' = 2ε₁²` from `(r₁*, ε₁*)`, stopped
/// when `ε₁` reaches `ζ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K1Flow {
    pub eps1_star: f64,
    pub zeta: f64,
    pub r1_star: f64,
    /// Transition time to `ε₁ = ζ`.
    pub t1: f64,
}

pub fn k1_flow(eps1_star: f64, zeta: f64, r1_star: f64) -> Result<K1Flow, ChartError> {
    if !(eps1_star > 0.0 && zeta.is_finite() && r1_star > 0.0 && r1_star.is_finite()) {
        return Err(domain(format!("k1_flow needs ε₁* > 0 and r₁* > 0, got {eps1_star}, {r1_star}")));
    }
    if eps1_star > zeta {
        return Err(domain(format!("ε₁* = {eps1_star} is already past the chart boundary ζ = {zeta}")));
    }
    let t1 = 0.5 / eps1_star * (1.0 - eps1_star / zeta);
    Ok(K1Flow { eps1_star, zeta, r1_star, t1 })
}

impl K1Flow {
    /// `1 - 2ε₁* t`.
    fn contraction(&self, t: f64) -> f64 {
        if t == self.t1 {
            // Avoids the cancellation in 1 - (1 - ε₁*/ζ).
            return self.eps1_star / self.zeta;
        }
        1.0 - 2.0 * self.eps1_star * t
    }

    pub fn r1(&self, t: f64) -> f64 {
        self.r1_star * self.contraction(t).powf(0.25)
    }

    pub fn eps1(&self, t: f64) -> f64 {
        if t == self.t1 {
            return self.zeta;
        }
        self.eps1_star / self.contraction(t)
    }

    /// `ε = r₁⁴ε₁`, constant along the flow.
    pub fn eps(&self) -> f64 {
        self.r1_star.powi(4) * self.eps1_star
    }

    pub fn state(&self, t: f64) -> ChartState {
        ChartState::K1 { r1: self.r1(t), eps1: self.eps1(t), t }
    }

    /// Physical time elapsed after chart time `t`: `∫_0^t r₁(s)^{-2} ds`.
    pub fn global_time(&self, t: f64) -> f64 {
        let s = 2.0 * self.eps1_star * t;
        // 1 - √(1-s) without cancellation.
        let num = s / (1.0 + (1.0 - s).sqrt());
        num / (self.eps1_star * self.r1_star * self.r1_star)
    }
}

/// Rescaling chart: `v₂' = 1` from `v₂ = -ζ^{-1/2}` to `v₂ = ρ_mid`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K2Flow {
    pub zeta: f64,
    pub rho_mid: f64,
    pub t2: f64,
}

pub fn k2_flow(zeta: f64, rho_mid: f64) -> Result<K2Flow, ChartError> {
    if !(zeta > 0.0 && zeta.is_finite() && rho_mid.is_finite()) {
        return Err(domain(format!("k2_flow needs ζ > 0, got {zeta}")));
    }
    Ok(K2Flow { zeta, rho_mid, t2: zeta.powf(-0.5) + rho_mid })
}

impl K2Flow {
    pub fn v2(&self, t: f64) -> f64 {
        if t == self.t2 {
            return self.rho_mid;
        }
        -self.zeta.powf(-0.5) + t
    }

    pub fn state(&self, r2: f64, t: f64) -> ChartState {
        ChartState::K2 { v2: self.v2(t), r2, t }
    }

    /// Physical time elapsed after chart time `t` at radius `r₂`.
    pub fn global_time(&self, r2: f64, t: f64) -> f64 {
        t / (r2 * r2)
    }
}

/// Exit chart: `r₃' = r₃ε₃/2`, `ε₃' = -2ε₃²` from `(r₃*, ζ)` until
/// `r₃ = ρ_out^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K3Flow {
    pub r3_star: f64,
    /// Entry value of `ε₃`.
    pub zeta: f64,
    pub rho_out: f64,
    pub t3: f64,
}

pub fn k3_flow(r3_star: f64, zeta: f64, rho_out: f64) -> Result<K3Flow, ChartError> {
    if !(r3_star > 0.0 && zeta > 0.0 && rho_out > 0.0 && zeta.is_finite() && rho_out.is_finite()) {
        return Err(domain(format!("k3_flow needs positive arguments, got {r3_star}, {zeta}, {rho_out}")));
    }
    let r4 = r3_star.powi(4);
    // A few ulps of slack so that an entry exactly on the section is accepted.
    if r4 > rho_out * rho_out * (1.0 + 1e-12) {
        return Err(domain(format!("r₃*⁴ = {r4} is already past the exit section ρ_out² = {}", rho_out * rho_out)));
    }
    let t3 = ((rho_out * rho_out - r4) / (2.0 * zeta * r4)).max(0.0);
    Ok(K3Flow { r3_star, zeta, rho_out, t3 })
}

impl K3Flow {
    fn expansion(&self, t: f64) -> f64 {
        1.0 + 2.0 * self.zeta * t
    }

    pub fn r3(&self, t: f64) -> f64 {
        if t == self.t3 {
            return self.rho_out.sqrt();
        }
        self.r3_star * self.expansion(t).powf(0.25)
    }

    pub fn eps3(&self, t: f64) -> f64 {
        self.zeta / self.expansion(t)
    }

    /// `ε = r₃⁴ε₃`, constant along the flow.
    pub fn eps(&self) -> f64 {
        self.r3_star.powi(4) * self.zeta
    }

    pub fn state(&self, t: f64) -> ChartState {
        ChartState::K3 { r3: self.r3(t), eps3: self.eps3(t), t }
    }

    /// Physical time elapsed after chart time `t`.
    pub fn global_time(&self, t: f64) -> f64 {
        let s = 2.0 * self.zeta * t;
        let num = s / ((1.0 + s).sqrt() + 1.0);
        num / (self.zeta * self.r3_star * self.r3_star)
    }
}
