use tp_charts::ChartError;
use tp_modulation::ModError;
use tp_numerics::NumericsError;
use tp_sh::ShError;

#[derive(Debug, thiserror::Error)]
pub enum ValidationError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Sh(#[from] ShError),
    #[error(transparent)]
    Modulation(#[from] ModError),
    #[error(transparent)]
    Charts(#[from] ChartError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
