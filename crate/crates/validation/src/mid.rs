//! Roll amplitude at the mid section.

use tp_charts::{f21, f22};
use tp_modulation::assemble_psi;

use crate::dynamic::sh_to_mid;
use crate::{line_fit, LineFit, PassageSetup, ValidationError};

/// One `ε` of the mid-section table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MidRow {
    pub eps: f64,
    /// `ln |û(1, T_mid)|`, finite even when the amplitude underflows.
    pub ln_mode1: f64,
    /// `|û(1, T_mid)| / ε^{1/2}`.
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct MidTable {
    pub rows: Vec<MidRow>,
    /// `|ν₁ (f_{2,2} + ζ^{-1/2} f_{2,1})|`, the linear forced response of
    /// `A_{1,2}` at the mid section.
    pub prediction: f64,
}

impl MidTable {
    /// Relative change of the ratio between the two smallest `ε`.
    pub fn tail_spread(&self) -> Option<f64> {
        let mut rows = self.rows.clone();
        rows.sort_by(|a, b| a.eps.total_cmp(&b.eps));
        match rows.as_slice() {
            [a, b, ..] => Some((a.ratio - b.ratio).abs() / b.ratio.abs()),
            _ => None,
        }
    }

    /// Least squares of `ln |û(1)|` against `1/ε`. The decay rate
    /// `κ = -2·slope/ρ_in²` follows from the slope.
    pub fn decay_fit(&self) -> Result<LineFit, ValidationError> {
        let x: Vec<f64> = self.rows.iter().map(|r| 1.0 / r.eps).collect();
        let y: Vec<f64> = self.rows.iter().map(|r| r.ln_mode1).collect();
        line_fit(&x, &y)
    }
}

/// Mode-1 amplitude of the Swift–Hohenberg solution at `Δ^mid`, started
/// from the order-`n` approximation at `Δ^in`.
pub fn mid_amplitude_check(setup: &PassageSetup, eps_list: &[f64], order: u32) -> Result<MidTable, ValidationError> {
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let set = setup.entry_set(order, eps)?;
        let psi = assemble_psi(&set, setup.sections.rho_in.sqrt(), setup.fast)?;
        let state = sh_to_mid(setup, eps, psi)?;
        let ln_mode1 = state.u.amplitude_at(1.0).ln() + state.log_scale;
        rows.push(MidRow { eps, ln_mode1, ratio: (ln_mode1 - 0.5 * eps.ln()).exp() });
    }
    let sec = &setup.sections;
    let nu1 = setup.nu.get(1).copied().unwrap_or_default();
    let f21v = f21(eps_list.iter().copied().fold(f64::INFINITY, f64::min) / sec.rho_in.powi(2), sec.zeta)?;
    let f22v = f22(sec.rho_mid, sec.zeta)?;
    let prediction = (nu1 * (f22v.statement + f21v.exact_level_weight / sec.zeta.sqrt())).norm();
    Ok(MidTable { rows, prediction })
}
