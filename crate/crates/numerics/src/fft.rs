use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(n)
        } else {
            p.plan_fft_forward(n)
        }
    })
}

/// Forward transform normalised so that coefficients are Fourier amplitudes.
pub(crate) fn forward(buf: &mut [Complex64]) {
    let n = buf.len();
    plan(n, false).process(buf);
    let s = 1.0 / n as f64;
    for c in buf.iter_mut() {
        *c *= s;
    }
}

/// Inverse of [`forward`]: synthesis from Fourier amplitudes.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    let n = buf.len();
    plan(n, true).process(buf);
}
