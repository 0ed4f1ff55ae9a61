//! Changes of chart.
//!
//! Both sides describe the same `Ψ = Σ r^ℓ A_{mj}(r x) e^{imx}` with
//! `ℓ = α(m) + j`. Switching from radius `r` to `r'` therefore multiplies
//! each envelope by `(r/r')^ℓ` and stretches the slow domain by `r'/r`.
//! The chart-local time is carried through unchanged.

use tp_modulation::{ModError, ModulationSet};

use crate::error::domain;
use crate::{ChartError, ChartState};

fn rebase(set: &ModulationSet, r_old: f64, r_new: f64) -> Result<ModulationSet, ModError> {
    let ratio = r_old / r_new;
    set.scaled_by_level(|l| ratio.powi(l as i32)).with_length(set.grid().length() * r_new / r_old)
}

fn positive(name: &str, v: f64) -> Result<(), ChartError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// K1 → K2: `v₂ = -ε₁^{-1/2}`, `r₂ = r₁ε₁^{1/4}`, `A₂ = (-v₂)^{ℓ/2}A₁`.
pub fn kappa12(state: ChartState, set: &ModulationSet) -> Result<(ChartState, ModulationSet), ChartError> {
    let ChartState::K1 { r1, eps1, t } = state else {
        return Err(domain(format!("kappa12 expects a K1 state, got {:?}", state.chart())));
    };
    positive("r₁", r1)?;
    positive("ε₁", eps1)?;
    let r2 = r1 * eps1.powf(0.25);
    let next = ChartState::K2 { v2: -eps1.powf(-0.5), r2, t };
    Ok((next, rebase(set, r1, r2)?))
}

/// K2 → K1, defined for `v₂ < 0`: `ε₁ = v₂^{-2}`, `r₁ = r₂(-v₂)^{1/2}`.
pub fn kappa21(state: ChartState, set: &ModulationSet) -> Result<(ChartState, ModulationSet), ChartError> {
    let ChartState::K2 { v2, r2, t } = state else {
        return Err(domain(format!("kappa21 expects a K2 state, got {:?}", state.chart())));
    };
    positive("r₂", r2)?;
    positive("-v₂", -v2)?;
    let r1 = r2 * (-v2).sqrt();
    let next = ChartState::K1 { r1, eps1: 1.0 / (v2 * v2), t };
    Ok((next, rebase(set, r2, r1)?))
}

/// K2 → K3, defined for `v₂ > 0`: `ε₃ = v₂^{-2}`, `r₃ = r₂v₂^{1/2}`,
/// `A₃ = ε₃^{ℓ/4}A₂`.
pub fn kappa23(state: ChartState, set: &ModulationSet) -> Result<(ChartState, ModulationSet), ChartError> {
    let ChartState::K2 { v2, r2, t } = state else {
        return Err(domain(format!("kappa23 expects a K2 state, got {:?}", state.chart())));
    };
    positive("r₂", r2)?;
    positive("v₂", v2)?;
    let r3 = r2 * v2.sqrt();
    let next = ChartState::K3 { r3, eps3: 1.0 / (v2 * v2), t };
    Ok((next, rebase(set, r2, r3)?))
}

/// K3 → K2: `v₂ = ε₃^{-1/2}`, `r₂ = r₃ε₃^{1/4}`.
pub fn kappa32(state: ChartState, set: &ModulationSet) -> Result<(ChartState, ModulationSet), ChartError> {
    let ChartState::K3 { r3, eps3, t } = state else {
        return Err(domain(format!("kappa32 expects a K3 state, got {:?}", state.chart())));
    };
    positive("r₃", r3)?;
    positive("ε₃", eps3)?;
    let r2 = r3 * eps3.powf(0.25);
    let next = ChartState::K2 { v2: eps3.powf(-0.5), r2, t };
    Ok((next, rebase(set, r3, r2)?))
}
