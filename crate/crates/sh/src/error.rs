use tp_numerics::NumericsError;

use crate::SHState;

#[derive(Debug, thiserror::Error)]
pub enum ShError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("integration failed at t = {t}: max|u| = {max_abs:e}, energy = {energy:e}")]
    Integration {
        t: f64,
        max_abs: f64,
        energy: f64,
        /// Last state that was still finite.
        last: Box<SHState>,
    },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
