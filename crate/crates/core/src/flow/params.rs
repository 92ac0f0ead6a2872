use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants of the rescaled system.
///
/// `amplitude` is the Couette amplitude `A`; time is measured in the rescaled
/// variable `t_rescaled = A * t_original`, so every dissipative and nonlinear
/// term carries a `1/A` prefactor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysParams {
    #[serde(rename = "A")]
    pub amplitude: f64,
    pub nu: f64,
    pub lam: f64,
    pub gam: f64,
}

impl Default for PhysParams {
    fn default() -> Self {
        Self {
            amplitude: 1.0,
            nu: 1.0,
            lam: 1.0,
            gam: 1.0,
        }
    }
}

impl PhysParams {
    pub fn with_amplitude(amplitude: f64) -> Self {
        Self {
            amplitude,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("A", self.amplitude),
            ("nu", self.nu),
            ("lam", self.lam),
            ("gam", self.gam),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParam(format!("{name} = {v} must be positive")));
            }
        }
        Ok(())
    }

    /// Effective vorticity diffusivity `nu / A` in rescaled time.
    pub fn omega_diffusivity(&self) -> f64 {
        self.nu / self.amplitude
    }

    /// Effective director diffusivity `gam / A` in rescaled time.
    pub fn director_diffusivity(&self) -> f64 {
        self.gam / self.amplitude
    }

    pub fn original_time(&self, rescaled: f64) -> f64 {
        rescaled / self.amplitude
    }
}

/// Which parts of the model are active.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFlags {
    /// Nonlinear terms (and director renormalization).
    pub nonlinear: bool,
    /// Couple the director to the Navier–Stokes vorticity equation. When off,
    /// the velocity perturbation is identically zero.
    pub couple_fluid: bool,
}

impl Default for ModelFlags {
    fn default() -> Self {
        Self {
            nonlinear: true,
            couple_fluid: true,
        }
    }
}

impl ModelFlags {
    pub const LINEAR: ModelFlags = ModelFlags {
        nonlinear: false,
        couple_fluid: true,
    };
}
