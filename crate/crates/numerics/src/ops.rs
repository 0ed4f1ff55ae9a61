use num_complex::Complex64;

use crate::fft;
use crate::{Grid1D, NumericsError, SpectralField};

/// Physical samples to Fourier amplitudes. Real input is symmetrised so the
/// result is exactly conjugate symmetric.
pub fn to_modes(grid: Grid1D, samples: &[f64]) -> Result<SpectralField, NumericsError> {
    if samples.len() != grid.n_points() {
        return Err(NumericsError::Config(format!(
            "sample count {} does not match grid size {}",
            samples.len(),
            grid.n_points()
        )));
    }
    let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft::forward(&mut buf);
    SpectralField::from_modes(grid, buf)
}

pub fn to_physical(f: &SpectralField) -> Vec<f64> {
    f.to_physical()
}

/// Multiplies mode `j` by `(i k_j)^order`. Odd derivatives drop the Nyquist
/// mode, which has no real derivative on the grid.
pub fn spectral_derivative(f: &SpectralField, order: u32) -> SpectralField {
    let grid = *f.grid();
    let mut out = f.clone();
    for (s, c) in out.modes_mut().iter_mut().enumerate() {
        if order % 2 == 1 && grid.is_nyquist(s) {
            *c = Complex64::new(0.0, 0.0);
        } else {
            *c *= Complex64::new(0.0, grid.wavenumber(s)).powu(order);
        }
    }
    out
}

/// Result of [`apply_propagator`]; `saturated` flags modes whose growth
/// factor overflowed and was clamped.
#[derive(Debug, Clone)]
pub struct Propagated {
    pub field: SpectralField,
    pub saturated: bool,
}

/// Largest exponent applied before clamping, just below `ln(f64::MAX)`.
const MAX_EXPONENT: f64 = 700.0;

/// `modes[j] <- exp(phase(k_j)) modes[j]`.
pub fn apply_propagator(f: &SpectralField, phase: impl Fn(f64) -> Complex64) -> Propagated {
    let grid = *f.grid();
    let mut out = f.clone();
    let mut saturated = false;
    for (s, c) in out.modes_mut().iter_mut().enumerate() {
        let mut p = phase(grid.wavenumber(s));
        if p.re > MAX_EXPONENT {
            p.re = MAX_EXPONENT;
            saturated = true;
        }
        *c *= p.exp();
    }
    out.symmetrize();
    Propagated { field: out, saturated }
}

/// Exact projection of `f³` onto the retained modes (2× zero padding).
pub fn dealiased_cube(f: &SpectralField) -> SpectralField {
    let grid = *f.grid();
    let n = grid.n_points();
    let big = 2 * n;
    let mut buf = vec![Complex64::new(0.0, 0.0); big];
    for s in 0..n {
        let j = grid.mode_index(s);
        let c = f.modes()[s];
        if s == n / 2 {
            // Nyquist amplitude is shared by ±n/2 on the padded grid.
            buf[n / 2] += c * 0.5;
            buf[big - n / 2] += c * 0.5;
        } else {
            buf[j.rem_euclid(big as i64) as usize] = c;
        }
    }
    fft::inverse(&mut buf);
    for c in buf.iter_mut() {
        let v = c.re;
        *c = Complex64::new(v * v * v, 0.0);
    }
    fft::forward(&mut buf);
    let mut modes = vec![Complex64::new(0.0, 0.0); n];
    for (s, m) in modes.iter_mut().enumerate() {
        if s == n / 2 {
            continue;
        }
        let j = grid.mode_index(s);
        *m = buf[j.rem_euclid(big as i64) as usize];
    }
    SpectralField::from_modes(grid, modes).expect("sizes match")
}
