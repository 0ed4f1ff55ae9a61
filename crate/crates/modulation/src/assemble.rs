use tp_numerics::{to_modes, Complex64, Grid1D, SpectralField};

use crate::{ModError, ModulationSet};

/// `Ψ(x) = Σ_{m,j} r^{α(m)+j} A_{mj}(r x) e^{imx}` on the fast grid.
///
/// When the slow domain is exactly `r` times the fast one, slow mode `q` of
/// `A_{mj}` lands on fast mode `q + mP` and the assembly is exact. Otherwise
/// the envelopes are evaluated by trigonometric interpolation.
pub fn assemble_psi(set: &ModulationSet, r: f64, fast: Grid1D) -> Result<SpectralField, ModError> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(ModError::Config(format!("radius r = {r} must be non-negative")));
    }
    if r == 0.0 {
        return Ok(SpectralField::zeros(fast));
    }
    let slow = *set.grid();
    let periods = fast.periods();
    let matched =
        ((r * fast.length() - slow.length()) / slow.length()).abs() < 1e-9 && (periods - periods.round()).abs() < 1e-9;
    if matched {
        assemble_spectral(set, r, fast, periods.round() as i64)
    } else {
        assemble_sampled(set, r, fast)
    }
}

fn assemble_spectral(set: &ModulationSet, r: f64, fast: Grid1D, periods: i64) -> Result<SpectralField, ModError> {
    let slow = *set.grid();
    let ns = slow.n_points();
    let mut modes = vec![Complex64::new(0.0, 0.0); fast.n_points()];
    for (idx, field) in set.iter() {
        let weight = r.powi(idx.level() as i32);
        let shift = idx.m as i64 * periods;
        for (s, c) in field.to_modes().into_iter().enumerate() {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let q = slow.mode_index(s);
            let targets: &[(i64, f64)] = if slow.is_nyquist(s) { &[(q, 0.5), (-q, 0.5)] } else { &[(q, 1.0)] };
            for &(qq, share) in targets {
                if let Some(slot) = fast.slot(qq + shift) {
                    if !fast.is_nyquist(slot) {
                        modes[slot] += c * weight * share;
                    }
                } else {
                    return Err(ModError::Config(format!(
                        "fast grid of {} points cannot hold slow mode {qq} of {idx} ({ns} slow points)",
                        fast.n_points()
                    )));
                }
            }
        }
    }
    Ok(SpectralField::from_modes(fast, modes)?)
}

fn assemble_sampled(set: &ModulationSet, r: f64, fast: Grid1D) -> Result<SpectralField, ModError> {
    let xs = fast.points();
    let slow_xs: Vec<f64> = xs.iter().map(|x| r * x).collect();
    let mut acc = vec![Complex64::new(0.0, 0.0); xs.len()];
    for (idx, field) in set.iter() {
        let weight = r.powi(idx.level() as i32);
        for ((a, v), x) in acc.iter_mut().zip(field.interpolate(&slow_xs)).zip(&xs) {
            *a += v * weight * Complex64::from_polar(1.0, idx.m as f64 * x);
        }
    }
    let real: Vec<f64> = acc.iter().map(|c| c.re).collect();
    Ok(to_modes(fast, &real)?)
}
