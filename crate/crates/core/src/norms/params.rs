use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Which parameter window the exponents are checked against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Coupled system: `1/3 < eps < 1/2 < m`.
    #[default]
    Coupled,
    /// Director equation alone: `1/6 < eps < 1/2 < m`.
    DirectorOnly,
}

/// Exponents of the weighted norms and of the bootstrap functional.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormParams {
    pub a: f64,
    pub m: f64,
    pub eps: f64,
    pub delta: f64,
    #[serde(default)]
    pub regime: Regime,
}

impl Default for NormParams {
    fn default() -> Self {
        Self {
            a: 0.008,
            m: 1.0,
            eps: 0.4,
            delta: 1.5,
            regime: Regime::Coupled,
        }
    }
}

impl NormParams {
    /// Upper bound on the exponential weight rate `a`.
    pub const A_MAX: f64 = 1.0 / (16.0 * (1.0 + 2.0 * PI));

    pub fn validate(&self) -> Result<()> {
        let eps_min = match self.regime {
            Regime::Coupled => 1.0 / 3.0,
            Regime::DirectorOnly => 1.0 / 6.0,
        };
        if !(self.a > 0.0 && self.a < Self::A_MAX) {
            return Err(Error::InvalidParam(format!("norms.a = {} outside (0, {:.6e})", self.a, Self::A_MAX)));
        }
        if !(self.eps > eps_min && self.eps < 0.5) {
            return Err(Error::InvalidParam(format!(
                "norms.eps = {} outside ({eps_min:.4}, 0.5)",
                self.eps
            )));
        }
        if !(self.m > 0.5 && self.m.is_finite()) {
            return Err(Error::InvalidParam(format!("norms.m = {} must exceed 1/2", self.m)));
        }
        if !(self.delta > 1.0 && self.delta.is_finite()) {
            return Err(Error::InvalidParam(format!("norms.delta = {} must exceed 1", self.delta)));
        }
        Ok(())
    }

    /// `kappa = max(2/(delta - 1), 24)`, the power in the amplitude threshold.
    pub fn kappa(&self) -> f64 {
        (2.0 / (self.delta - 1.0)).max(24.0)
    }

    /// Horizontal weight `Lambda(k) = (1+k^2)^m (1+k^-2)^eps`; `k = 0` is evaluated at `k_floor`.
    pub fn lambda_weight(&self, k: f64, k_floor: f64) -> f64 {
        let k = if k == 0.0 { k_floor } else { k };
        let k2 = k * k;
        (1.0 + k2).powf(self.m) * (1.0 + 1.0 / k2).powf(self.eps)
    }
}
