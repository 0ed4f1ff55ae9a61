//! Numerical building blocks shared by the Swift–Hohenberg solver and the
//! modulation hierarchy.
//!
//! Real periodic fields live in [`SpectralField`] as conjugate-symmetric
//! Fourier coefficients; complex envelopes live in [`ComplexField`] as point
//! samples. All operations are pure.

mod error;
mod fft;
mod field;
mod grid;
mod hul;
mod ops;
pub mod quad;
pub mod special;

pub use error::NumericsError;
pub use field::{ComplexField, SpectralField};
pub use grid::Grid1D;
pub use hul::{hul_norm, hul_norm_default, local_density_integrals};
pub use num_complex::Complex64;
pub use ops::{apply_propagator, dealiased_cube, spectral_derivative, to_modes, to_physical, Propagated};
pub use special::{erf, gamma_window_integral, upper_gamma, upper_gamma_scaled};
