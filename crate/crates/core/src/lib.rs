//! Pseudo-spectral simulation of the simplified Ericksen–Leslie system
//! (nematic liquid crystal flow) perturbed around a Couette shear flow,
//! together with the Fourier-multiplier energy diagnostics used to track
//! enhanced dissipation and blow-up suppression.
//!
//! The flow is integrated in the sheared frame, so the transport term
//! `y d/dx` becomes a drift of vertical wavenumber labels and the linear
//! part is solved exactly.

pub mod error;
pub mod experiment;
pub mod flow;
pub mod initial_data;
pub mod linear;
pub mod norms;
pub mod spectral;

pub use error::{Error, Result};
pub use experiment::{DiagnosticsRow, RunSummary, SimConfig};
pub use flow::{FlowState, PhysParams, Verdict};
pub use initial_data::{DataReport, InitialDataParams};
pub use norms::NormParams;
pub use spectral::{Grid, PhysicalField, SpectralField};
