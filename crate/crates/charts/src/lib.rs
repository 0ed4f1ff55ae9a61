//! Chart dynamics of the blown-up slow passage.
//!
//! The degenerate point `(u, v, ε) = (0, 0, 0)` is blown up to a cylinder
//! and viewed through three affine charts: K1 (`v̄ = -1`, entry), K2
//! (`ε̄ = 1`, rescaling) and K3 (`v̄ = 1`, exit). In each chart the scalar
//! flow is explicit, so transition times, radii and the physical time are
//! closed-form. Envelopes are carried across chart boundaries by the
//! `κ` maps and the full passage is assembled by [`full_passage`].

mod constants;
mod error;
mod flows;
mod kappa;
mod passage;
mod state;

pub use constants::{a12_linear, a12_prediction, f21, f21_gamma_form, f21_limit, f21_weighted, f22, F21, F22};
pub use error::ChartError;
pub use flows::{k1_flow, k2_flow, k3_flow, K1Flow, K2Flow, K3Flow};
pub use kappa::{kappa12, kappa21, kappa23, kappa32};
pub use passage::{
    full_passage, write_passage_csv, PassageOptions, PassageRecord, PassageRow, SectionTag, StopAt, PASSAGE_CSV_HEADER,
};
pub use state::{ChartState, SectionSpec};
