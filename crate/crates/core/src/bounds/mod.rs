//! Asymptotic rate/distance curves and weight-spectrum exponents.
//!
//! All logarithms are base 2 and every slack term is taken at its limit, so
//! each function returns the limiting curve itself.

mod chernov;
mod concat;
mod constrained;
pub mod curve;
pub mod entropy;
mod modified;
pub mod optim;
mod spectrum;

use serde::Serialize;

pub use chernov::{chernov_exponent, chernov_zero_crossing, ChernovPoint};
pub use concat::{blokh_zyablov, blokh_zyablov_inf, mult_bound, zyablov, BZPoint};
pub use constrained::{
    bound_bb, constrained_q_distance, g_beta, sigma_lower, wpe, wpe_checked, wpe_convex_rate,
    wpe_inflection, GBetaCurve, WPE_CONVEX_RATE,
};
pub use entropy::{entropy, entropy_inv, gv_delta};
pub use modified::{
    bound_ria, check_weight, omega_modified, omega_star, omega_star_star, ModOmegaCurve,
};
pub use spectrum::{
    ensemble_distance, ensemble_gv_crossover, ensemble_rate, ensemble_root, serial_branches,
    serial_distance, serial_spectrum, spectrum_branches, spectrum_exponent, SpectrumBranch,
    SpectrumPoint,
};

/// One point of a rate/distance curve with the optimiser's witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundPoint {
    pub rate: f64,
    pub delta: f64,
    pub beta_star: Option<f64>,
    pub r0_star: Option<f64>,
}
