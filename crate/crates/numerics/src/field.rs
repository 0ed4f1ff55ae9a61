use num_complex::Complex64;

use crate::fft;
use crate::{Grid1D, NumericsError};

/// Real periodic field stored as Fourier amplitudes in FFT slot order.
///
/// `u(x) = Σ_j modes[j] e^{i k_j x}` with `modes[-j] = conj(modes[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid1D,
    modes: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, modes: vec![Complex64::new(0.0, 0.0); grid.n_points()] }
    }

    /// Builds a field from raw amplitudes and enforces conjugate symmetry.
    pub fn from_modes(grid: Grid1D, modes: Vec<Complex64>) -> Result<Self, NumericsError> {
        if modes.len() != grid.n_points() {
            return Err(NumericsError::Config(format!("expected {} modes, got {}", grid.n_points(), modes.len())));
        }
        let mut f = Self { grid, modes };
        f.symmetrize();
        Ok(f)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn modes(&self) -> &[Complex64] {
        &self.modes
    }

    pub fn modes_mut(&mut self) -> &mut [Complex64] {
        &mut self.modes
    }

    /// Amplitude of signed mode index `j` (zero when not representable).
    pub fn mode(&self, j: i64) -> Complex64 {
        self.grid.slot(j).map_or(Complex64::new(0.0, 0.0), |s| self.modes[s])
    }

    /// Amplitude at wavenumber `k`, e.g. `k = 1` for the critical roll.
    pub fn amplitude_at(&self, k: f64) -> f64 {
        self.grid.slot_of_wavenumber(k).map_or(0.0, |s| self.modes[s].norm())
    }

    /// Replaces `modes` by the Hermitian part so that the field is real.
    pub fn symmetrize(&mut self) {
        let n = self.modes.len();
        self.modes[0].im = 0.0;
        self.modes[n / 2].im = 0.0;
        for s in 1..n / 2 {
            let a = self.modes[s];
            let b = self.modes[n - s];
            let avg = (a + b.conj()) * 0.5;
            self.modes[s] = avg;
            self.modes[n - s] = avg.conj();
        }
    }

    /// Largest violation of `modes[-j] = conj(modes[j])`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.modes.len();
        let mut d = self.modes[0].im.abs().max(self.modes[n / 2].im.abs());
        for s in 1..n / 2 {
            d = d.max((self.modes[s] - self.modes[n - s].conj()).norm());
        }
        d
    }

    pub fn to_physical(&self) -> Vec<f64> {
        let mut buf = self.modes.clone();
        fft::inverse(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.to_physical().into_iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `∫_0^L |u|² dx` via Parseval.
    pub fn energy(&self) -> f64 {
        self.grid.length() * self.modes.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { grid: self.grid, modes: self.modes.iter().map(|c| c * s).collect() }
    }

    pub fn add_scaled(&self, other: &Self, s: f64) -> Self {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        let modes = self.modes.iter().zip(&other.modes).map(|(a, b)| a + b * s).collect();
        Self { grid: self.grid, modes }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -1.0)
    }

    pub fn is_finite(&self) -> bool {
        self.modes.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Spatial shift `u(x) -> u(x - a)`.
    pub fn shifted(&self, a: f64) -> Self {
        let modes = self
            .modes
            .iter()
            .enumerate()
            .map(|(s, c)| c * Complex64::from_polar(1.0, -self.grid.wavenumber(s) * a))
            .collect();
        let mut f = Self { grid: self.grid, modes };
        f.symmetrize();
        f
    }
}

/// Complex samples of an envelope on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self, NumericsError> {
        if values.len() != grid.n_points() {
            return Err(NumericsError::Config(format!("expected {} samples, got {}", grid.n_points(), values.len())));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self::constant(grid, Complex64::new(0.0, 0.0))
    }

    pub fn constant(grid: Grid1D, c: Complex64) -> Self {
        Self { grid, values: vec![c; grid.n_points()] }
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        Self { grid, values: grid.points().into_iter().map(f).collect() }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn to_modes(&self) -> Vec<Complex64> {
        let mut buf = self.values.clone();
        fft::forward(&mut buf);
        buf
    }

    pub fn from_modes(grid: Grid1D, mut modes: Vec<Complex64>) -> Result<Self, NumericsError> {
        if modes.len() != grid.n_points() {
            return Err(NumericsError::Config("mode count does not match grid".into()));
        }
        fft::inverse(&mut modes);
        Ok(Self { grid, values: modes })
    }

    /// `∂^order` by spectral differentiation.
    pub fn derivative(&self, order: u32) -> Self {
        if order == 0 {
            return self.clone();
        }
        let mut m = self.to_modes();
        for (s, c) in m.iter_mut().enumerate() {
            if order % 2 == 1 && self.grid.is_nyquist(s) {
                *c = Complex64::new(0.0, 0.0);
                continue;
            }
            *c *= Complex64::new(0.0, self.grid.wavenumber(s)).powu(order);
        }
        fft::inverse(&mut m);
        Self { grid: self.grid, values: m }
    }

    pub fn conj(&self) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|c| c.conj()).collect() }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|c| c * s).collect() }
    }

    /// `self + s · other`.
    pub fn add_scaled(&self, other: &Self, s: Complex64) -> Self {
        debug_assert_eq!(self.grid, other.grid);
        Self { grid: self.grid, values: self.values.iter().zip(&other.values).map(|(a, b)| a + s * b).collect() }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.grid, other.grid);
        Self { grid: self.grid, values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    /// Fourier multiplier: mode with wavenumber `k` is multiplied by `symbol(k)`.
    pub fn apply_multiplier(&self, symbol: impl Fn(f64) -> Complex64) -> Self {
        let mut m = self.to_modes();
        for (s, c) in m.iter_mut().enumerate() {
            *c *= symbol(self.grid.wavenumber(s));
        }
        fft::inverse(&mut m);
        Self { grid: self.grid, values: m }
    }

    /// Same samples viewed on a domain of a different length.
    pub fn with_length(&self, length: f64) -> Result<Self, NumericsError> {
        Ok(Self { grid: Grid1D::with_length(self.grid.n_points(), length)?, values: self.values.clone() })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Trigonometric interpolant evaluated at arbitrary points (periodically
    /// wrapped).
    pub fn interpolate(&self, xs: &[f64]) -> Vec<Complex64> {
        let modes = self.to_modes();
        let n = self.grid.n_points();
        let active: Vec<(f64, Complex64)> = modes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(s, c)| (self.grid.wavenumber(s), *c))
            .collect();
        if active.len() == 1 && active[0].0 == 0.0 {
            return vec![active[0].1; xs.len()];
        }
        // The Nyquist amplitude is split symmetrically so that the
        // interpolant of real data stays real.
        let kn = self.grid.wavenumber(n / 2);
        xs.iter()
            .map(|&x| {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(k, c) in &active {
                    if k == kn {
                        acc += c * (k * x).cos();
                    } else {
                        acc += c * Complex64::from_polar(1.0, k * x);
                    }
                }
                acc
            })
            .collect()
    }
}
