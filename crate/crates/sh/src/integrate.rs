use tp_numerics::{hul_norm_default, SpectralField};

use crate::{step, SHParams, SHState, ShError};

/// Controls for [`integrate`].
#[derive(Debug, Clone)]
pub struct IntegrateOptions {
    pub t_end: f64,
    pub h: f64,
    /// Values of `v` at which to stop exactly and record the solution.
    pub sections: Vec<f64>,
    /// Record observables every this many steps (and at the end).
    pub observe_every: Option<usize>,
    /// Sobolev index of the uniformly local norm in observations.
    pub theta: u32,
    /// Treat `max|u|` above this as blow-up.
    pub blow_up: f64,
}

impl IntegrateOptions {
    pub fn new(t_end: f64, h: f64) -> Self {
        Self { t_end, h, sections: Vec::new(), observe_every: None, theta: 1, blow_up: 1e6 }
    }

    pub fn with_sections(mut self, sections: Vec<f64>) -> Self {
        self.sections = sections;
        self
    }

    pub fn observe_every(mut self, n: usize) -> Self {
        self.observe_every = Some(n.max(1));
        self
    }
}

/// Scalar observables at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub t: f64,
    pub v: f64,
    pub hul_norm: f64,
    pub max_abs: f64,
    /// `|û(k = 1)|`.
    pub mode1_abs: f64,
    /// `ln max|u|`, finite under log tracking even when `max_abs` underflows.
    pub ln_max_abs: f64,
}

impl Observation {
    pub fn of(state: &SHState, params: &SHParams, theta: u32) -> Self {
        let scale = state.log_scale.exp();
        let slot = state.u.grid().slot_of_wavenumber(1.0);
        Self {
            t: state.t,
            v: state.v(params.eps()),
            hul_norm: hul_norm_default(&state.u, theta) * scale,
            max_abs: state.u.max_abs() * scale,
            mode1_abs: slot.map_or(0.0, |s| state.u.modes()[s].norm() * scale),
            ln_max_abs: state.ln_max_abs(),
        }
    }
}

/// Solution recorded where `v` crossed a requested section value.
#[derive(Debug, Clone)]
pub struct SectionHit {
    pub v_section: f64,
    pub t: f64,
    pub state: SHState,
    pub hul_norm: f64,
}

impl SectionHit {
    /// The physical field at the crossing.
    pub fn field(&self) -> SpectralField {
        self.state.physical()
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub initial: SHState,
    pub last: SHState,
    pub sections: Vec<SectionHit>,
    pub observations: Vec<Observation>,
    pub steps: usize,
}

/// Integrates from `state0` to `t_end`.
///
/// Because `v` is affine in `t`, crossing times of the sections are exact;
/// the step is shortened to land on each of them.
pub fn integrate(state0: &SHState, params: &SHParams, opts: &IntegrateOptions) -> Result<Trajectory, ShError> {
    if !(opts.t_end >= state0.t) {
        return Err(ShError::Config(format!("t_end = {} precedes the initial time {}", opts.t_end, state0.t)));
    }
    if !(opts.h > 0.0 && opts.h <= params.h_max) {
        return Err(ShError::Config(format!("step h = {} must lie in (0, {}]", opts.h, params.h_max)));
    }
    let eps = params.eps();
    let v_start = state0.v(eps);
    let mut pending: Vec<(f64, f64)> = opts
        .sections
        .iter()
        .filter(|&&v| eps > 0.0 && v >= v_start)
        .map(|&v| (state0.t + (v - v_start) / eps, v))
        .filter(|&(t, _)| t <= opts.t_end)
        .collect();
    pending.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut state = state0.clone();
    let mut sections = Vec::new();
    let mut observations = Vec::new();
    let mut steps = 0usize;
    let observe = |s: &SHState, obs: &mut Vec<Observation>| obs.push(Observation::of(s, params, opts.theta));
    if opts.observe_every.is_some() {
        observe(&state, &mut observations);
    }

    let time_tol = 1e-12 * opts.t_end.abs().max(1.0);
    // A section at the initial time fires immediately.
    while let Some(&(t_sec, v_sec)) = pending.last() {
        if t_sec > state.t + time_tol {
            break;
        }
        sections.push(hit(&state, v_sec, opts.theta));
        pending.pop();
    }

    while state.t < opts.t_end - time_tol {
        let mut target = (state.t + opts.h).min(opts.t_end);
        if let Some(&(t_sec, _)) = pending.last() {
            target = target.min(t_sec);
        }
        let mut next = step(&state, params, target - state.t)?;
        next.t = target;
        steps += 1;
        if next.u.max_abs() * next.log_scale.exp() > opts.blow_up {
            return Err(ShError::Integration {
                t: next.t,
                max_abs: next.u.max_abs(),
                energy: next.u.energy(),
                last: Box::new(state),
            });
        }
        state = next;
        while let Some(&(t_sec, v_sec)) = pending.last() {
            if t_sec > state.t + time_tol {
                break;
            }
            sections.push(hit(&state, v_sec, opts.theta));
            pending.pop();
        }
        if let Some(every) = opts.observe_every {
            if steps.is_multiple_of(every) {
                observe(&state, &mut observations);
            }
        }
    }
    if let Some(every) = opts.observe_every {
        if !steps.is_multiple_of(every) {
            observe(&state, &mut observations);
        }
    }
    Ok(Trajectory { initial: state0.clone(), last: state, sections, observations, steps })
}

fn hit(state: &SHState, v_section: f64, theta: u32) -> SectionHit {
    SectionHit {
        v_section,
        t: state.t,
        hul_norm: hul_norm_default(&state.u, theta) * state.log_scale.exp(),
        state: state.clone(),
    }
}
