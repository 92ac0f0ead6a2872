//! Bootstrap functional
//! `E(t) = A^delta || |Dx|^1/3 d ||_X + || (dx^2, dy^2) |Dx|^1/3 d ||_X + || w ||_X`.

use serde::{Deserialize, Serialize};

use super::norm::{x_norm_update, y_norm_multi, WeightOp, XNormAccumulator, XSample};
use super::params::NormParams;
use crate::error::{Error, Result};
use crate::flow::FlowState;

pub const D13_OPS: &[WeightOp] = &[WeightOp::AbsDx13];
pub const HESS13_OPS: &[WeightOp] = &[WeightOp::Dxx13, WeightOp::Dyy13];
pub const OMEGA_OPS: &[WeightOp] = &[WeightOp::Identity];

/// Three accumulators, one per addend of `E(t)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EnergyAccumulators {
    pub d13: XNormAccumulator,
    pub hess13: XNormAccumulator,
    pub omega: XNormAccumulator,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub total: f64,
    /// `A^delta ||.||_X` of the low-order director term.
    pub d13: f64,
    pub hess13: f64,
    pub omega: f64,
}

/// `Y` norms of the three monitored quantities at one instant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct YNorms {
    pub d13: f64,
    pub hess13: f64,
    pub omega: f64,
}

impl YNorms {
    pub fn of(state: &FlowState, params: &NormParams) -> Self {
        let d: Vec<_> = state.d.iter().collect();
        Self {
            d13: y_norm_multi(&d, params, D13_OPS),
            hess13: y_norm_multi(&d, params, HESS13_OPS),
            omega: y_norm_multi(&[&state.omega], params, OMEGA_OPS),
        }
    }
}

impl EnergyAccumulators {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sample all three quantities at `state.t`.
    pub fn update(&mut self, state: &FlowState, params: &NormParams, amplitude: f64) -> Result<()> {
        let d: Vec<_> = state.d.iter().collect();
        x_norm_update(&mut self.d13, &d, D13_OPS, state.t, params, amplitude)?;
        x_norm_update(&mut self.hess13, &d, HESS13_OPS, state.t, params, amplitude)?;
        x_norm_update(&mut self.omega, &[&state.omega], OMEGA_OPS, state.t, params, amplitude)
    }

    pub fn samples(&self) -> [&XSample; 3] {
        [&self.d13.last_sample, &self.hess13.last_sample, &self.omega.last_sample]
    }
}

pub fn energy_functional(accs: &EnergyAccumulators, params: &NormParams, amplitude: f64) -> Result<EnergyBreakdown> {
    if accs.d13.is_empty() {
        return Err(Error::MissingAccumulator("d13"));
    }
    if accs.hess13.is_empty() {
        return Err(Error::MissingAccumulator("hess_d13"));
    }
    if accs.omega.is_empty() {
        return Err(Error::MissingAccumulator("omega"));
    }
    let d13 = amplitude.powf(params.delta) * accs.d13.value();
    let hess13 = accs.hess13.value();
    let omega = accs.omega.value();
    Ok(EnergyBreakdown {
        total: d13 + hess13 + omega,
        d13,
        hess13,
        omega,
    })
}

/// `K = C_cal (|| (dx^2, dy^2) |Dx|^1/3 d_in ||_Y + || w_in ||_Y + 1)`.
pub fn bootstrap_constant(hess13_in: f64, omega_in: f64, c_cal: f64) -> f64 {
    c_cal * (hess13_in + omega_in + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Grid, SpectralField};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn zero_state_has_zero_energy() {
        let st = FlowState::zeros(Grid::square(16, PI).unwrap());
        let p = NormParams::default();
        let mut acc = EnergyAccumulators::new();
        acc.update(&st, &p, 10.0).unwrap();
        assert_eq!(energy_functional(&acc, &p, 10.0).unwrap().total, 0.0);
    }

    #[test]
    fn missing_sample_is_an_error() {
        let p = NormParams::default();
        assert!(matches!(
            energy_functional(&EnergyAccumulators::new(), &p, 1.0),
            Err(Error::MissingAccumulator("d13"))
        ));
    }

    #[test]
    fn vorticity_only_state() {
        let g = Grid::square(16, PI).unwrap();
        let mut st = FlowState::zeros(g);
        st.omega = SpectralField::real_mode(g, 2, 1, Complex64::new(0.1, 0.0), 0.0).unwrap();
        let p = NormParams::default();
        let mut acc = EnergyAccumulators::new();
        acc.update(&st, &p, 10.0).unwrap();
        let e = energy_functional(&acc, &p, 10.0).unwrap();
        assert_eq!(e.d13 + e.hess13, 0.0);
        assert_eq!(e.total, e.omega);
        assert!(e.omega > 0.0);
    }

    #[test]
    fn constant_example() {
        assert_eq!(bootstrap_constant(0.0, 0.0, 1.0), 1.0);
        assert_eq!(bootstrap_constant(2.0, 0.5, 3.0), 10.5);
    }
}
