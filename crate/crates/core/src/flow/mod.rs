//! Rescaled perturbation system around Couette flow: right-hand sides,
//! the integrating-factor stepper, director renormalization and the
//! blow-up monitor.

mod director;
mod monitor;
mod params;
mod rhs;
mod state;
mod stepper;

pub use director::{min_director_length, renormalize_director, sphere_defect, RenormReport};
pub use monitor::{blow_up_monitor, sup_grad_n, BlowUpMonitor, Verdict};
pub use params::{ModelFlags, PhysParams};
pub use rhs::{
    director_rhs, director_rhs_with, leslie_stress_curl, velocity_from_vorticity, vorticity_rhs, vorticity_rhs_with,
    PointStats, Tendency,
};
pub use state::FlowState;
pub use stepper::{cfl_bound, step, StepOptions, StepReport};
