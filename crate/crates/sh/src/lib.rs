//! Dynamic Swift–Hohenberg equation
//!
//! ```text
//! u_t = -(1 + ∂_x²)² u + v u - u³ + ε μ(x),    v_t = ε,
//! ```
//!
//! on a periodic domain, with `μ(x) = Σ_m ν_m e^{imx}`. The linear part is
//! diagonal in Fourier space and its drift integral is closed-form, so the
//! integrator advances it exactly and treats only `-u³ + εμ` by an
//! exponential midpoint rule.

mod error;
mod initial;
mod integrate;
mod io;
mod params;
mod residual;
mod state;

pub use error::ShError;
pub use initial::{gaussian_roll, random_band, roll};
pub use integrate::{integrate, IntegrateOptions, Observation, SectionHit, Trajectory};
pub use io::{read_snapshots, write_observables_csv, write_snapshots, Snapshot, SnapshotManifest};
pub use params::{dispersion, linear_phase, Nonlinearity, SHParams, Source};
pub use residual::residual_of;
pub use state::{step, SHState};

/// Default fast-time step.
pub const DEFAULT_STEP: f64 = 0.05;
