//! Validity of the modulation approximation at fixed `v = δ²`.

use std::f64::consts::TAU;

use rayon::prelude::*;
use tp_modulation::{
    assemble_psi, gl_graph_eval, solve_modulation, ChartPoint, DampingConvention, Hierarchy, ModeIndex, ModulationSet,
};
use tp_numerics::{hul_norm_default, Complex64, ComplexField, Grid1D};
use tp_sh::{integrate, IntegrateOptions, SHParams, SHState};

use crate::{ScalingFit, ValidationError};

#[derive(Debug, Clone)]
pub struct StaticSetup {
    /// Slow domain length in units of 2π; `δ·P = slow_cells` must give an
    /// integer number `P` of fast cells.
    pub slow_cells: f64,
    /// Slow horizon `T₀`, i.e. fast horizon `T₀/δ²`.
    pub horizon: f64,
    /// Number of equally spaced comparison times in `(0, T₀]`.
    pub samples: usize,
    pub points_per_cell: usize,
    pub slow_points: usize,
    pub h_sh: f64,
    pub h_env: f64,
    pub theta: u32,
}

impl Default for StaticSetup {
    fn default() -> Self {
        Self {
            slow_cells: 4.2,
            horizon: 1.0,
            samples: 10,
            points_per_cell: 16,
            slow_points: 64,
            h_sh: 0.05,
            h_env: 0.005,
            theta: 1,
        }
    }
}

impl StaticSetup {
    /// Smooth, non-symmetric `A_{1,1}` with one slow wavelength.
    pub fn initial_envelope(&self) -> Result<ComplexField, ValidationError> {
        let grid = Grid1D::with_length(self.slow_points, TAU * self.slow_cells)?;
        let q = TAU / grid.length();
        Ok(ComplexField::from_fn(grid, |x| {
            Complex64::new(0.5 + 0.3 * (q * x).cos(), 0.2 * (q * x).sin() + 0.1 * (2.0 * q * x).cos())
        }))
    }

    fn fast_grid(&self, delta: f64) -> Result<Grid1D, ValidationError> {
        let p = self.slow_cells / delta;
        let periods = p.round();
        if !(periods >= 1.0 && (p - periods).abs() < 1e-9 * p) {
            return Err(ValidationError::Config(format!(
                "δ = {delta} does not divide the slow domain into whole cells ({p} cells)"
            )));
        }
        Ok(Grid1D::with_resolution(periods as usize, self.points_per_cell)?)
    }
}

/// Sup-over-time errors of one `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticRow {
    pub delta: f64,
    /// Leading-order ansatz `δ A_{1,1}(δx) e^{ix} + c.c.` only.
    pub error_gl: f64,
    /// Full order-`n` ansatz.
    pub error_n: f64,
}

#[derive(Debug, Clone)]
pub struct StaticReport {
    pub order: u32,
    pub rows: Vec<StaticRow>,
    pub fit_gl: ScalingFit,
    pub fit_n: ScalingFit,
}

/// Ψ at the comparison times, and the Swift–Hohenberg solution started from
/// its own initial value; returns `sup_t ‖u - Ψ‖`.
fn sup_error(
    setup: &StaticSetup,
    delta: f64,
    fast: Grid1D,
    sets: &[(f64, ModulationSet)],
    keep: impl Fn(&ModulationSet) -> Result<ModulationSet, ValidationError>,
) -> Result<f64, ValidationError> {
    let psis = sets
        .iter()
        .map(|(t, s)| Ok((t / (delta * delta), assemble_psi(&keep(s)?, delta, fast)?)))
        .collect::<Result<Vec<_>, ValidationError>>()?;
    let params = SHParams::frozen(fast)?;
    let mut state = SHState::new(psis[0].1.clone(), delta * delta);
    let mut worst: f64 = 0.0;
    for (t, psi) in &psis[1..] {
        let opts = IntegrateOptions::new(*t, setup.h_sh);
        state = integrate(&state, &params, &opts)?.last;
        worst = worst.max(hul_norm_default(&state.u.sub(psi), setup.theta));
    }
    Ok(worst)
}

fn static_row(setup: &StaticSetup, hier: &Hierarchy, delta: f64) -> Result<StaticRow, ValidationError> {
    let fast = setup.fast_grid(delta)?;
    let point = ChartPoint::Static { v2: 1.0 };
    let init = ModulationSet::from_critical(hier.order(), &[setup.initial_envelope()?])?;
    let init = gl_graph_eval(hier, &init, point)?;
    let dt = setup.horizon / setup.samples as f64;
    let outputs: Vec<f64> = (1..=setup.samples).map(|i| i as f64 * dt).collect();
    let traj = solve_modulation(hier, &init, point, setup.horizon, setup.h_env, &outputs)?;
    let mut sets = vec![(0.0, init)];
    sets.extend(traj.times.into_iter().zip(traj.sets));

    let order = hier.order();
    let gl_only = |s: &ModulationSet| -> Result<ModulationSet, ValidationError> {
        let a11 = s.get(ModeIndex::new(1, 1)).expect("critical envelope").clone();
        Ok(ModulationSet::from_critical(order, &[a11])?)
    };
    let error_gl = sup_error(setup, delta, fast, &sets, gl_only)?;
    let error_n = sup_error(setup, delta, fast, &sets, |s| Ok(s.clone()))?;
    Ok(StaticRow { delta, error_gl, error_n })
}

/// Errors of the leading-order and order-`n` approximations over
/// `[0, T₀/δ²]`, with log–log fits against `δ`.
pub fn static_error_experiment(
    setup: &StaticSetup,
    delta_list: &[f64],
    order: u32,
) -> Result<StaticReport, ValidationError> {
    let hier = Hierarchy::new(order, DampingConvention::Exact, &[])?;
    let rows = delta_list.par_iter().map(|&d| static_row(setup, &hier, d)).collect::<Result<Vec<_>, _>>()?;
    let deltas: Vec<f64> = rows.iter().map(|r| r.delta).collect();
    let fit_gl = ScalingFit::fit(&deltas, &rows.iter().map(|r| r.error_gl).collect::<Vec<_>>())?;
    let fit_n = ScalingFit::fit(&deltas, &rows.iter().map(|r| r.error_n).collect::<Vec<_>>())?;
    Ok(StaticReport { order, rows, fit_gl, fit_n })
}
