use tp_modulation::ModError;
use tp_numerics::NumericsError;

#[derive(Debug, thiserror::Error)]
pub enum ChartError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Modulation(#[from] ModError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub(crate) fn domain(msg: impl Into<String>) -> ChartError {
    ChartError::Domain(msg.into())
}
