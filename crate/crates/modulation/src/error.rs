use tp_numerics::NumericsError;

#[derive(Debug, thiserror::Error)]
pub enum ModError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("singular operator: {0}")]
    Singular(String),
    #[error("envelope integration failed at chart time {t}: {reason}")]
    Integration { t: f64, reason: String },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
