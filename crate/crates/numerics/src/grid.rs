use std::f64::consts::TAU;

use crate::NumericsError;

/// Uniform periodic collocation grid.
///
/// Fast grids cover `periods` basic cells of length 2π. Envelope grids built
/// with [`Grid1D::with_length`] may have any positive length, since the slow
/// coordinate is rescaled when charts change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n_points: usize,
    length: f64,
}

impl Grid1D {
    /// Grid on `[0, 2πP)` with at least eight points per cell.
    pub fn new(periods: usize, n_points: usize) -> Result<Self, NumericsError> {
        if periods == 0 {
            return Err(NumericsError::Config("periods must be positive".into()));
        }
        if !n_points.is_power_of_two() {
            return Err(NumericsError::Config(format!("n_points = {n_points} is not a power of two")));
        }
        if n_points < 8 * periods {
            return Err(NumericsError::Config(format!(
                "n_points = {n_points} gives fewer than 8 points per cell for P = {periods}"
            )));
        }
        Ok(Self { n_points, length: TAU * periods as f64 })
    }

    /// Smallest admissible grid for `periods` cells with at least
    /// `points_per_cell` samples per cell.
    pub fn with_resolution(periods: usize, points_per_cell: usize) -> Result<Self, NumericsError> {
        let n = (periods * points_per_cell.max(8)).next_power_of_two();
        Self::new(periods, n)
    }

    /// Envelope grid of arbitrary length.
    pub fn with_length(n_points: usize, length: f64) -> Result<Self, NumericsError> {
        if !n_points.is_power_of_two() || n_points < 2 {
            return Err(NumericsError::Config(format!("n_points = {n_points} is not a power of two")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(NumericsError::Config(format!("grid length {length} must be positive")));
        }
        Ok(Self { n_points, length })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Number of 2π cells, `L / 2π`. Integral for fast grids.
    pub fn periods(&self) -> f64 {
        self.length / TAU
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n_points as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Signed mode index of FFT slot `slot`; the Nyquist slot maps to `n/2`.
    pub fn mode_index(&self, slot: usize) -> i64 {
        let n = self.n_points as i64;
        let s = slot as i64;
        if s <= n / 2 {
            s
        } else {
            s - n
        }
    }

    /// FFT slot holding signed mode `j`, if it is representable.
    pub fn slot(&self, j: i64) -> Option<usize> {
        let n = self.n_points as i64;
        if j.abs() > n / 2 || (j == -n / 2) {
            return None;
        }
        Some(j.rem_euclid(n) as usize)
    }

    /// Wavenumber `k_j = 2π j / L` of FFT slot `slot`.
    pub fn wavenumber(&self, slot: usize) -> f64 {
        TAU * self.mode_index(slot) as f64 / self.length
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n_points).map(|s| self.wavenumber(s)).collect()
    }

    pub fn is_nyquist(&self, slot: usize) -> bool {
        slot == self.n_points / 2
    }

    /// FFT slot of the integer wavenumber `k`, requiring `k·P` to be integral.
    pub fn slot_of_wavenumber(&self, k: f64) -> Option<usize> {
        let j = k * self.periods();
        let jr = j.round();
        if (j - jr).abs() > 1e-9 {
            return None;
        }
        self.slot(jr as i64)
    }
}
