//! Initial-condition families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tp_numerics::{to_modes, Complex64, Grid1D, SpectralField};

use crate::ShError;

/// `a (e^{ix} + c.c.) = 2a cos x`.
pub fn roll(grid: Grid1D, a: f64) -> Result<SpectralField, ShError> {
    let samples: Vec<f64> = grid.points().iter().map(|x| 2.0 * a * x.cos()).collect();
    Ok(to_modes(grid, &samples)?)
}

/// `2a exp(-(x - x0)² / (2 w²)) cos x`, with `x0` the domain centre.
pub fn gaussian_roll(grid: Grid1D, a: f64, width: f64) -> Result<SpectralField, ShError> {
    if !(width > 0.0) {
        return Err(ShError::Config(format!("window width {width} must be positive")));
    }
    let x0 = 0.5 * grid.length();
    let samples: Vec<f64> =
        grid.points().iter().map(|&x| 2.0 * a * (-(x - x0).powi(2) / (2.0 * width * width)).exp() * x.cos()).collect();
    Ok(to_modes(grid, &samples)?)
}

/// Random field with modes in `|k ∓ 1| < 1/2`, rescaled to `max|u| = amplitude`.
pub fn random_band(grid: Grid1D, amplitude: f64, seed: u64) -> Result<SpectralField, ShError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modes = vec![Complex64::new(0.0, 0.0); grid.n_points()];
    for s in 0..grid.n_points() {
        let k = grid.wavenumber(s);
        if k > 0.0 && (k - 1.0).abs() < 0.5 && !grid.is_nyquist(s) {
            let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            modes[s] = c;
            let mirror = grid.slot(-grid.mode_index(s)).expect("mirror mode exists");
            modes[mirror] = c.conj();
        }
    }
    let f = SpectralField::from_modes(grid, modes)?;
    let m = f.max_abs();
    if m == 0.0 {
        return Err(ShError::Config("grid resolves no modes near |k| = 1".into()));
    }
    Ok(f.scaled(amplitude / m))
}
