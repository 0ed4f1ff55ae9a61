use tp_numerics::{dealiased_cube, hul_norm_default, spectral_derivative, SpectralField};

use crate::{SHParams, ShError};

/// Residual `‖-∂_tΨ - (1+∂_x²)²Ψ + vΨ - Ψ³ + εμ‖_{H^θ_ul}` at the interior
/// snapshot times, with `∂_tΨ` by centred differences.
///
/// `snapshots` must be equally spaced in time. Returns `(t, residual)`.
pub fn residual_of(
    snapshots: &[(f64, SpectralField)],
    params: &SHParams,
    v: impl Fn(f64) -> f64,
    theta: u32,
) -> Result<Vec<(f64, f64)>, ShError> {
    if snapshots.len() < 3 {
        return Err(ShError::Config(format!("residual needs at least 3 snapshots, got {}", snapshots.len())));
    }
    let dt = snapshots[1].0 - snapshots[0].0;
    if !(dt > 0.0) {
        return Err(ShError::Config("snapshot times must increase".into()));
    }
    for w in snapshots.windows(2) {
        if ((w[1].0 - w[0].0) - dt).abs() > 1e-9 * dt.max(w[1].0.abs()) {
            return Err(ShError::Config("snapshots are not equally spaced".into()));
        }
    }
    let eps = params.eps();
    let mut out = Vec::with_capacity(snapshots.len() - 2);
    for i in 1..snapshots.len() - 1 {
        let (t, psi) = (&snapshots[i].0, &snapshots[i].1);
        let dpsi = snapshots[i + 1].1.sub(&snapshots[i - 1].1).scaled(0.5 / dt);
        let d2 = spectral_derivative(psi, 2);
        let d4 = spectral_derivative(psi, 4);
        let mut r = dpsi
            .scaled(-1.0)
            .add_scaled(psi, v(*t) - 1.0)
            .add_scaled(&d2, -2.0)
            .add_scaled(&d4, -1.0)
            .add_scaled(&dealiased_cube(psi), -1.0);
        if eps != 0.0 {
            r = r.add_scaled(params.mu(), eps);
        }
        out.push((*t, hul_norm_default(&r, theta)));
    }
    Ok(out)
}
