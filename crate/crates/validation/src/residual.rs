//! Order of the Swift–Hohenberg residual of the assembled ansatz.

use std::f64::consts::TAU;

use rayon::prelude::*;
use tp_modulation::{
    assemble_psi, solve_modulation, ChartPoint, DampingConvention, Hierarchy, ModeIndex, ModulationSet,
};
use tp_numerics::{Complex64, ComplexField, Grid1D};
use tp_sh::{residual_of, SHParams, Source};

use crate::{ScalingFit, ValidationError};

/// Which envelopes enter the assembled field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualAnsatz {
    /// Every envelope of the order-`n` hierarchy.
    Full,
    /// `A_{1,1}` alone, slaved envelopes dropped.
    LeadingOnly,
}

#[derive(Debug, Clone)]
pub struct ResidualSetup {
    /// Slow domain length in units of 2π.
    pub slow_cells: f64,
    pub slow_points: usize,
    /// `v̄` of the rescaling chart at the start.
    pub v2: f64,
    pub nu: Vec<Complex64>,
    /// Slow time over which the envelopes are evolved before sampling.
    pub warmup: f64,
    pub h_env: f64,
    /// Fast-time spacing of the three snapshots.
    pub dt: f64,
    pub points_per_cell: usize,
    pub theta: u32,
}

impl Default for ResidualSetup {
    fn default() -> Self {
        Self {
            slow_cells: 12.0,
            slow_points: 64,
            v2: 0.2,
            nu: vec![
                Complex64::new(0.3, 0.0),
                Complex64::new(0.4, -0.2),
                Complex64::new(0.2, 0.1),
                Complex64::new(0.1, 0.0),
                Complex64::new(0.05, 0.05),
            ],
            warmup: 0.5,
            h_env: 0.005,
            dt: 0.02,
            points_per_cell: 32,
            theta: 1,
        }
    }
}

impl ResidualSetup {
    /// Critical envelopes with `x`-dependence so that every spatial
    /// derivative in the hierarchy contributes.
    fn initial_set(&self, order: u32) -> Result<ModulationSet, ValidationError> {
        let grid = Grid1D::with_length(self.slow_points, TAU * self.slow_cells)?;
        let q = TAU / grid.length();
        let critical: Vec<ComplexField> = (1..=order - 3)
            .map(|j| {
                if j == 1 {
                    ComplexField::from_fn(grid, |x| {
                        Complex64::new(0.6 + 0.2 * (q * x).cos(), 0.2 * (2.0 * q * x).sin())
                    })
                } else {
                    ComplexField::from_fn(grid, |x| Complex64::new(0.5 * (q * x).sin() / j as f64, 0.3))
                }
            })
            .collect();
        Ok(ModulationSet::from_critical(order, &critical)?)
    }
}

#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub order: u32,
    pub ansatz: ResidualAnsatz,
    /// Fit of the residual norm against `r`.
    pub fit: ScalingFit,
}

/// `‖Res(rψ_n)‖` for each `r`, on the rescaling chart with `ε = r⁴`, using
/// envelopes taken from the modulation solver so that time derivatives are
/// the ones the hierarchy produces.
pub fn residual_order_experiment(
    setup: &ResidualSetup,
    r_list: &[f64],
    order: u32,
    ansatz: ResidualAnsatz,
) -> Result<ResidualReport, ValidationError> {
    let hier = Hierarchy::new(order, DampingConvention::Exact, &setup.nu)?;
    let start = ChartPoint::K2 { v2: setup.v2 };
    let warm = solve_modulation(&hier, &setup.initial_set(order)?, start, setup.warmup, setup.h_env, &[])?;
    let base = warm.sets.last().cloned().expect("solver returns the final set");
    let point = ChartPoint::K2 { v2: setup.v2 + setup.warmup };
    let pairs: Vec<(i32, Complex64)> = setup.nu.iter().enumerate().map(|(m, c)| (m as i32, *c)).collect();
    let source = Source::from_pairs(&pairs)?;

    let norms = r_list
        .par_iter()
        .map(|&r| -> Result<f64, ValidationError> {
            let periods = (setup.slow_cells / r).round().max(1.0) as usize;
            let fast = Grid1D::with_resolution(periods, setup.points_per_cell)?;
            let set = base.with_length(r * fast.length())?;
            // Chart time advances as r²·(fast time).
            let d = r * r * setup.dt;
            let traj = solve_modulation(&hier, &set, point, 2.0 * d, (d / 4.0).min(setup.h_env), &[d])?;
            let mut snaps = Vec::with_capacity(3);
            for (i, s) in std::iter::once(&set).chain(traj.sets.iter()).enumerate() {
                let s = match ansatz {
                    ResidualAnsatz::Full => s.clone(),
                    ResidualAnsatz::LeadingOnly => {
                        let a11 = s.get(ModeIndex::new(1, 1)).expect("critical envelope").clone();
                        ModulationSet::from_critical(order, &[a11])?
                    }
                };
                snaps.push((i as f64 * setup.dt, assemble_psi(&s, r, fast)?));
            }
            let eps = r.powi(4);
            let params = SHParams::new(eps, source.clone(), fast)?;
            let v2 = setup.v2 + setup.warmup;
            let v = |t: f64| r * r * (v2 + r * r * t);
            Ok(residual_of(&snaps, &params, v, setup.theta)?[0].1)
        })
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(ResidualReport { order, ansatz, fit: ScalingFit::fit(r_list, &norms)? })
}
