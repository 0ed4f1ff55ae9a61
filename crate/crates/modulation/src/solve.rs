use tp_numerics::{Complex64, ComplexField};

use crate::{ChartPoint, Hierarchy, JetEngine, ModError, ModeIndex, ModulationSet};

/// Fills every slaved envelope from the critical ones by the graph
/// equations at chart point `point`.
pub fn gl_graph_eval(hier: &Hierarchy, set: &ModulationSet, point: ChartPoint) -> Result<ModulationSet, ModError> {
    check_order(hier, set)?;
    let mut engine = JetEngine::from_set(hier, point, set)?;
    let mut out = set.clone();
    for idx in hier.slaved_indices() {
        out.insert(idx, engine.coefficient(idx, 0)?)?;
    }
    Ok(out)
}

/// `∂_t̄ A_{1j}` for `j = 1..=N-2`. Slaved envelopes are recomputed from the
/// critical ones, so only the latter need to be current.
pub fn modulation_rhs(hier: &Hierarchy, set: &ModulationSet, point: ChartPoint) -> Result<Vec<ComplexField>, ModError> {
    check_order(hier, set)?;
    let mut engine = JetEngine::from_set(hier, point, set)?;
    (1..=hier.critical_count()).map(|j| engine.rhs(j, 0)).collect()
}

fn check_order(hier: &Hierarchy, set: &ModulationSet) -> Result<(), ModError> {
    if set.order() != hier.order() {
        return Err(ModError::Config(format!(
            "set of order {} used with hierarchy of order {}",
            set.order(),
            hier.order()
        )));
    }
    Ok(())
}

/// Envelope states at requested chart times.
#[derive(Debug, Clone)]
pub struct ModulationTrajectory {
    pub times: Vec<f64>,
    pub points: Vec<ChartPoint>,
    /// Complete sets (slaved envelopes refreshed) at each time.
    pub sets: Vec<ModulationSet>,
}

/// Integrates the critical cascade from chart time 0 (at `start`) to
/// `t_end`, recording complete sets at `outputs` (and at `t_end`).
///
/// All critical envelopes advance together by an exponential midpoint rule;
/// the diagonal part `4∂² + v̄ - cρ` of each is propagated exactly using the
/// closed-form chart flow.
pub fn solve_modulation(
    hier: &Hierarchy,
    init: &ModulationSet,
    start: ChartPoint,
    t_end: f64,
    h: f64,
    outputs: &[f64],
) -> Result<ModulationTrajectory, ModError> {
    check_order(hier, init)?;
    if !(t_end >= 0.0 && h > 0.0) {
        return Err(ModError::Config(format!("need t_end ≥ 0 and h > 0, got {t_end}, {h}")));
    }
    if t_end >= start.horizon() {
        return Err(ModError::Config(format!("t_end = {t_end} reaches the chart horizon {}", start.horizon())));
    }
    let mut marks: Vec<f64> = outputs.iter().copied().filter(|&t| (0.0..=t_end).contains(&t)).collect();
    marks.push(t_end);
    marks.sort_by(f64::total_cmp);
    marks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * t_end.max(1.0));

    let weights: Vec<f64> = (1..=hier.critical_count())
        .map(|j| hier.convention().weight(start.id(), ModeIndex::new(1, j).level(), true, j))
        .collect();
    let mut fields = init.critical();
    let mut t = 0.0;
    let mut point = start;
    let mut traj = ModulationTrajectory { times: Vec::new(), points: Vec::new(), sets: Vec::new() };
    let tol = 1e-12 * t_end.max(1.0);

    for &mark in &marks {
        while t < mark - tol {
            let tau = h.min(mark - t);
            fields = midpoint_step(hier, &fields, point, tau, &weights)
                .map_err(|e| ModError::Integration { t, reason: e.to_string() })?;
            if !fields.iter().all(ComplexField::is_finite) {
                return Err(ModError::Integration { t, reason: "non-finite envelope".into() });
            }
            point = point.advanced(tau)?;
            t += tau;
        }
        t = mark;
        let set = ModulationSet::from_critical(hier.order(), &fields)?;
        traj.times.push(t);
        traj.points.push(point);
        traj.sets.push(gl_graph_eval(hier, &set, point)?);
    }
    Ok(traj)
}

/// Multiplier `exp(-4q²τ + ∫v̄ - c∫ρ)` over `[0, τ]` from `point`.
fn propagate(f: &ComplexField, point: ChartPoint, tau: f64, weight: f64) -> ComplexField {
    let scalar = point.v_integral(tau) - weight * point.log_r_increment(tau);
    f.apply_multiplier(|q| Complex64::new((-4.0 * q * q * tau + scalar).exp(), 0.0))
}

fn midpoint_step(
    hier: &Hierarchy,
    fields: &[ComplexField],
    point: ChartPoint,
    h: f64,
    weights: &[f64],
) -> Result<Vec<ComplexField>, ModError> {
    let forcing = |state: &[ComplexField], p: ChartPoint| -> Result<Vec<ComplexField>, ModError> {
        let mut engine = JetEngine::new(hier, p, state.to_vec())?;
        (1..=hier.critical_count()).map(|j| engine.forcing(j, 0)).collect()
    };
    let half = Complex64::new(0.5 * h, 0.0);
    let f0 = forcing(fields, point)?;
    let mid: Vec<ComplexField> = fields
        .iter()
        .zip(&f0)
        .zip(weights)
        .map(|((a, f), &w)| propagate(&a.add_scaled(f, half), point, 0.5 * h, w))
        .collect();
    let mid_point = point.advanced(0.5 * h)?;
    let f1 = forcing(&mid, mid_point)?;
    Ok(fields
        .iter()
        .zip(&f1)
        .zip(weights)
        .map(|((a, f), &w)| {
            propagate(a, point, h, w).add_scaled(&propagate(f, mid_point, 0.5 * h, w), Complex64::new(h, 0.0))
        })
        .collect())
}
