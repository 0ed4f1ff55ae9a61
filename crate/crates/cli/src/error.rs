use tp_validation::ValidationError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Experiment(#[from] ValidationError),
}

macro_rules! via_validation {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Experiment(e.into())
            }
        }
    )*};
}

via_validation!(tp_sh::ShError, tp_modulation::ModError, tp_charts::ChartError, tp_numerics::NumericsError);
