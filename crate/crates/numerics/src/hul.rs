use num_complex::Complex64;

use crate::fft;
use crate::{spectral_derivative, SpectralField};

/// Finest spacing used for the window quadrature. Coarser grids are
/// refined by exact trigonometric interpolation before integrating.
const MAX_QUAD_SPACING: f64 = 0.02;

/// Window integrals `∫_{y-w/2}^{y+w/2} Σ_{j≤θ} |∂^j u|² dx` for centres
/// `y = 0, stride, 2·stride, …` covering one period.
pub fn local_density_integrals(f: &SpectralField, theta: u32, window: f64, stride: f64) -> Vec<f64> {
    let grid = *f.grid();
    let n = grid.n_points();
    let length = grid.length();
    assert!(window > 0.0 && window <= length, "window must lie in (0, L]");
    assert!(stride > 0.0, "stride must be positive");

    let mut q = 1usize;
    while grid.dx() / q as f64 > MAX_QUAD_SPACING {
        q *= 2;
    }
    let fine = n * q;
    let h = length / fine as f64;

    let mut density = vec![0.0; fine];
    for j in 0..=theta {
        let d = spectral_derivative(f, j);
        let mut buf = vec![Complex64::new(0.0, 0.0); fine];
        for s in 0..n {
            let c = d.modes()[s];
            if s == n / 2 {
                if q == 1 {
                    buf[s] = c;
                } else {
                    buf[n / 2] += c * 0.5;
                    buf[fine - n / 2] += c * 0.5;
                }
            } else {
                let m = grid.mode_index(s);
                buf[m.rem_euclid(fine as i64) as usize] = c;
            }
        }
        fft::inverse(&mut buf);
        for (acc, c) in density.iter_mut().zip(&buf) {
            *acc += c.re * c.re;
        }
    }

    // Cumulative integral of the piecewise-linear interpolant.
    let mut cum = vec![0.0; fine + 1];
    for i in 0..fine {
        let d1 = density[(i + 1) % fine];
        cum[i + 1] = cum[i] + 0.5 * h * (density[i] + d1);
    }
    let total = cum[fine];
    let antiderivative = |x: f64| -> f64 {
        let wraps = (x / length).floor();
        let xr = x - wraps * length;
        let pos = xr / h;
        let i = (pos.floor() as usize).min(fine - 1);
        let tau = pos - i as f64;
        let d0 = density[i];
        let d1 = density[(i + 1) % fine];
        wraps * total + cum[i] + h * (d0 * tau + 0.5 * (d1 - d0) * tau * tau)
    };

    let n_centres = ((length / stride).round() as usize).max(1);
    (0..n_centres)
        .map(|c| {
            let y = c as f64 * stride;
            (antiderivative(y + 0.5 * window) - antiderivative(y - 0.5 * window)).max(0.0)
        })
        .collect()
}

/// Uniformly local Sobolev norm: the largest local `H^θ` norm over windows.
///
/// The field is normalised by its largest Fourier amplitude first, so the
/// result stays accurate for amplitudes whose squares would underflow.
pub fn hul_norm(f: &SpectralField, theta: u32, window: f64, stride: f64) -> f64 {
    let scale = f.modes().iter().fold(0.0, |m: f64, c| m.max(c.norm()));
    if scale == 0.0 || !scale.is_finite() {
        return if scale == 0.0 { 0.0 } else { f64::NAN };
    }
    let unit = f.scaled(1.0 / scale);
    scale * local_density_integrals(&unit, theta, window, stride).into_iter().fold(0.0, f64::max).sqrt()
}

/// [`hul_norm`] with unit windows centred on every collocation point.
pub fn hul_norm_default(f: &SpectralField, theta: u32) -> f64 {
    hul_norm(f, theta, 1.0, f.grid().dx())
}
