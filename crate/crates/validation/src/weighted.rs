use tp_numerics::{hul_norm_default, SpectralField};

use crate::ValidationError;

/// `‖u - ψ‖_{H^θ_ul} / r^β`, the rescaled remainder of an approximation.
pub fn weighted_error(
    u: &SpectralField,
    psi: &SpectralField,
    r: f64,
    beta: f64,
    theta: u32,
) -> Result<f64, ValidationError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(ValidationError::Domain(format!("weight radius r = {r} must be positive")));
    }
    if u.grid() != psi.grid() {
        return Err(ValidationError::Config("solution and approximation live on different grids".into()));
    }
    Ok(hul_norm_default(&u.sub(psi), theta) / r.powf(beta))
}
