//! Validity of the blow-up approximation along the slow passage.

use rayon::prelude::*;
use tp_charts::{full_passage, PassageOptions, SectionSpec, SectionTag, StopAt};
use tp_modulation::{gl_graph_eval, ChartPoint, DampingConvention, Hierarchy, ModulationSet};
use tp_numerics::{hul_norm_default, Complex64, ComplexField, Grid1D, SpectralField};
use tp_sh::{integrate, random_band, IntegrateOptions, SHParams, SHState, Source};

use crate::{ScalingFit, ValidationError};

/// Shared set-up of the passage experiments.
#[derive(Debug, Clone)]
pub struct PassageSetup {
    pub sections: SectionSpec,
    /// Source coefficients `ν_0, ν_1, …`.
    pub nu: Vec<Complex64>,
    /// x-homogeneous critical envelope `A_{1,1}` at `Δ^in`.
    pub a11: Complex64,
    /// Physical grid; envelopes are homogeneous so one period suffices.
    pub fast: Grid1D,
    /// Step of the Swift–Hohenberg solver.
    pub h_sh: f64,
    /// Chart-time step of the envelope solver.
    pub h_env: f64,
    pub theta: u32,
    pub convention: DampingConvention,
}

impl Default for PassageSetup {
    fn default() -> Self {
        Self {
            sections: SectionSpec::default(),
            nu: vec![Complex64::new(2e-3, 0.0), Complex64::new(1e-3, 5e-4), Complex64::new(1e-3, -1e-3)],
            a11: Complex64::new(0.05, 0.0),
            fast: Grid1D::new(1, 32).expect("valid grid"),
            h_sh: 0.02,
            h_env: 0.01,
            theta: 1,
            convention: DampingConvention::Exact,
        }
    }
}

impl PassageSetup {
    pub fn source(&self) -> Result<Source, ValidationError> {
        let pairs: Vec<(i32, Complex64)> = self.nu.iter().enumerate().map(|(m, c)| (m as i32, *c)).collect();
        Ok(Source::from_pairs(&pairs)?)
    }

    pub fn hierarchy(&self, order: u32) -> Result<Hierarchy, ValidationError> {
        Ok(Hierarchy::new(order, self.convention, &self.nu)?)
    }

    /// Envelopes at `Δ^in` (chart K1) with the slaved ones on their graph.
    pub fn entry_set(&self, order: u32, eps: f64) -> Result<ModulationSet, ValidationError> {
        let hier = self.hierarchy(order)?;
        let r1 = self.sections.rho_in.sqrt();
        let slow = Grid1D::with_length(4, r1 * self.fast.length())?;
        let set = ModulationSet::from_critical(order, &[ComplexField::constant(slow, self.a11)])?;
        let eps1 = eps / self.sections.rho_in.powi(2);
        Ok(gl_graph_eval(&hier, &set, ChartPoint::K1 { eps1 })?)
    }
}

/// Swift–Hohenberg solution from `u0` at `v = -ρ_in` up to `Δ^mid`, with
/// log tracking so that exponentially small states stay resolved.
pub fn sh_to_mid(setup: &PassageSetup, eps: f64, u0: SpectralField) -> Result<SHState, ValidationError> {
    let params = SHParams::new(eps, setup.source()?, setup.fast)?.with_log_tracking(true);
    let v_mid = setup.sections.rho_mid * eps.sqrt();
    let opts = IntegrateOptions::new(setup.sections.t_mid(eps), setup.h_sh).with_sections(vec![v_mid]);
    let traj = integrate(&SHState::new(u0, -setup.sections.rho_in), &params, &opts)?;
    Ok(traj.sections.into_iter().next().map_or(traj.last, |hit| hit.state))
}

/// Blown-down approximation and Swift–Hohenberg solution at `Δ^mid`.
#[derive(Debug, Clone)]
pub struct MidComparison {
    pub eps: f64,
    pub psi_in: SpectralField,
    pub psi_mid: SpectralField,
    pub u_mid: SpectralField,
    pub error: f64,
}

/// Runs the approximation of order `n` and the full equation from
/// `u* = Ψ* + perturbation` at `v = -ρ_in` to `Δ^mid`.
pub fn compare_at_mid(
    setup: &PassageSetup,
    order: u32,
    eps: f64,
    perturbation: Option<&SpectralField>,
) -> Result<MidComparison, ValidationError> {
    let hier = setup.hierarchy(order)?;
    let init = setup.entry_set(order, eps)?;
    let opts = PassageOptions {
        stop_at: StopAt::Mid,
        h: setup.h_env,
        fast: setup.fast,
        theta: setup.theta,
        samples_per_chart: 0,
    };
    let rec = full_passage(&hier, &init, eps, &setup.sections, &opts)?;
    let psi_in = rec.section(SectionTag::In).expect("entry row").psi.clone();
    let psi_mid = rec.section(SectionTag::Mid).expect("mid row").psi.clone();

    let u0 = match perturbation {
        Some(p) => psi_in.add_scaled(p, 1.0),
        None => psi_in.clone(),
    };
    let u_mid = sh_to_mid(setup, eps, u0)?.physical();
    let error = hul_norm_default(&u_mid.sub(&psi_mid), setup.theta);
    Ok(MidComparison { eps, psi_in, psi_mid, u_mid, error })
}

/// A seeded perturbation of `u*` and what is left of it at `Δ^mid`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedRun {
    pub eps: f64,
    pub seed: u64,
    /// Error at `Δ^mid` when `u* = Ψ*`.
    pub error_exact: f64,
    /// Error at `Δ^mid` from the perturbed start.
    pub error_perturbed: f64,
    /// `‖u*_pert - Ψ*‖` at `Δ^in`.
    pub gap_in: f64,
    /// `‖u_pert - u‖` at `Δ^mid`.
    pub gap_mid: f64,
}

/// Errors at `Δ^mid` per `ε` and seed, and the log–log slope.
#[derive(Debug, Clone)]
pub struct DynamicReport {
    pub order: u32,
    /// Fit of the unperturbed errors against `ε`.
    pub fit: ScalingFit,
    pub paired: Vec<PairedRun>,
}

/// Size of the seeded perturbations of `u*` relative to `‖Ψ*‖_∞`.
pub const PERTURBATION: f64 = 0.1;

/// Runs every `ε` (in parallel) from `u* = Ψ*` and from `Ψ*` plus a seeded
/// band-limited perturbation, and fits the unperturbed errors.
pub fn dynamic_error_experiment(
    setup: &PassageSetup,
    eps_list: &[f64],
    order: u32,
    seeds: &[u64],
) -> Result<DynamicReport, ValidationError> {
    let per_eps: Vec<Result<(f64, Vec<PairedRun>), ValidationError>> = eps_list
        .par_iter()
        .map(|&eps| {
            let base = compare_at_mid(setup, order, eps, None)?;
            let mut runs = Vec::with_capacity(seeds.len());
            for &seed in seeds {
                let p = random_band(setup.fast, PERTURBATION * base.psi_in.max_abs(), seed)?;
                let pert = compare_at_mid(setup, order, eps, Some(&p))?;
                runs.push(PairedRun {
                    eps,
                    seed,
                    error_exact: base.error,
                    error_perturbed: pert.error,
                    gap_in: hul_norm_default(&p, setup.theta),
                    gap_mid: hul_norm_default(&pert.u_mid.sub(&base.u_mid), setup.theta),
                });
            }
            Ok((base.error, runs))
        })
        .collect();
    let mut errors = Vec::new();
    let mut paired = Vec::new();
    for r in per_eps {
        let (e, runs) = r?;
        errors.push(e);
        paired.extend(runs);
    }
    Ok(DynamicReport { order, fit: ScalingFit::fit(eps_list, &errors)?, paired })
}
