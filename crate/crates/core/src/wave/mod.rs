//! Physical parameters, wave states, the surface residual and the
//! closed-form laminar/bifurcation data.

mod dispersion;
mod params;
mod residual;

pub use dispersion::{
    bifurcating_flux, depth_for_speed, dispersion_lambdas, dispersion_residual, flux_condition_cs,
    laminar_flow, stagnation_criterion, stagnation_line_height, transversality, FluxConditionReport,
    LaminarFlow, Side, StagnationCriterion,
};
pub(crate) use dispersion::bisect;
pub use params::{convert_lambda_mu_to_mq, convert_mq_to_lambda_mu, PhysicalParams, WaveState};
pub use residual::{
    even_modes, jacobian, linearization_trivial, residual, residual_of, Linearization, Unknown,
};
