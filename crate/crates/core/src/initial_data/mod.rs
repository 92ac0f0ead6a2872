//! Explicit large-energy initial data and its norm bookkeeping.

mod family;
mod profile;

pub use family::{
    amplitude_threshold, family_norms, family_report, gap_check, lift_to_sphere, make_director_data,
    make_director_state, norms_report, report_grid, theta_for_smallness, DataReport, GapCheck, InitialDataParams,
    Threshold, C_CAL_CAVEAT,
};
pub use profile::{bump, schwartz_band_profile, BandProfile};
