//! Ghost-weight multipliers, anisotropic norms and the bootstrap functional.

mod energy;
mod multipliers;
mod norm;
mod params;
mod regions;

pub use energy::{
    bootstrap_constant, energy_functional, EnergyAccumulators, EnergyBreakdown, YNorms, D13_OPS, HESS13_OPS,
    OMEGA_OPS,
};
pub use multipliers::{
    coercivity_check, m1_eval, m2_eval, m_eval, m_xi_derivative_weighted, Coercivity, MultiplierGrid,
};
pub use norm::{x_norm_update, y_norm, y_norm_multi, y_norm_sq, WeightOp, XNormAccumulator, XSample};
pub use params::{NormParams, Regime};
pub use regions::{region_classify, region_inequality_check, Region, RegionExponents};
