mod acceptance;
mod delay;
mod dynamic;
mod error;
mod fit;
mod mid;
mod residual;
mod static_exp;
mod weighted;

pub use acceptance::{
    chart_machinery, dispersion_sanity, dynamic_validity, full_delay, hierarchy_golden_values, linear_delay,
    mid_section_rolls, residual_order, run_acceptance, special_functions, static_validity, CriterionResult,
    MAX_FIT_RESIDUAL,
};
pub use delay::{delay_experiment, linear_exit, linear_log_gain, min_full_eps, DelayConfig, DelayMode, DelayRecord};
pub use dynamic::{
    compare_at_mid, dynamic_error_experiment, sh_to_mid, DynamicReport, MidComparison, PairedRun, PassageSetup,
    PERTURBATION,
};
pub use error::ValidationError;
pub use fit::{line_fit, LineFit, ScalingFit};
pub use mid::{mid_amplitude_check, MidRow, MidTable};
pub use residual::{residual_order_experiment, ResidualAnsatz, ResidualReport, ResidualSetup};
pub use static_exp::{static_error_experiment, StaticReport, StaticRow, StaticSetup};
pub use weighted::weighted_error;
