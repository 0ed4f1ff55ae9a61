//! Modulation hierarchy.
//!
//! The approximation is `Ψ = Σ_{m,j} r^{α(m)+j} A_{mj}(r x, t̄) e^{imx}` with
//! `α(m) = ||m| - 1|`. Critical envelopes `A_{±1,j}` obey (generalised)
//! Ginzburg–Landau equations; every other envelope is slaved to them by an
//! algebraic graph equation. Time derivatives appearing in those graph
//! equations are produced by Taylor-mode recursion on the critical
//! equations, not by differencing.

mod assemble;
mod chart;
mod cubic;
mod derive;
mod error;
mod hierarchy;
mod index;
mod jets;
mod ops;
mod set;
mod solve;

pub use assemble::assemble_psi;
pub use chart::{ChartId, ChartPoint, DampingConvention, ScalarJets};
pub use cubic::{enumerate_cubic, CubicTerm};
pub use derive::derive_document;
pub use error::ModError;
pub use hierarchy::Hierarchy;
pub use index::{alpha, tilde_alpha, ModeIndex};
pub use jets::JetEngine;
pub use ops::{invert_l0, linear_op_apply, TildeInputs};
pub use set::ModulationSet;
pub use solve::{gl_graph_eval, modulation_rhs, solve_modulation, ModulationTrajectory};
