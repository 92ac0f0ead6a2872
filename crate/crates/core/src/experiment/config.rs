//! Run configuration, read from a flat file of dotted `block.key = value` lines.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{ModelFlags, PhysParams, StepOptions};
use crate::initial_data::InitialDataParams;
use crate::norms::NormParams;
use crate::spectral::Grid;

/// Periodic box `[-lx, lx) x [-ly, ly)` resolved by `nx x ny` modes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    #[serde(default = "default_pad")]
    pub dealias_pad: usize,
}

fn default_pad() -> usize {
    2
}

impl GridConfig {
    pub fn to_grid(&self) -> Result<Grid> {
        Grid::new(self.nx, self.ny, self.lx, self.ly, self.dealias_pad)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_diag_every")]
    pub diag_every: u64,
    /// Zero writes only the final checkpoint.
    #[serde(default)]
    pub checkpoint_every: u64,
}

fn default_diag_every() -> u64 {
    10
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    DirectorFamily,
    File,
    SingleMode,
}

/// Initial data. Which keys are required depends on `kind`:
/// `director_family` needs `lambda`, `N`, `theta`; `file` needs `file`;
/// `single_mode` needs `k_index`, `xi_index`, `amplitude` (a real vorticity mode).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitConfig {
    pub kind: InitKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_index: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_index: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    /// Amplitude of seeded random vorticity added on top of the data.
    #[serde(default)]
    pub noise: f64,
}

impl InitConfig {
    pub fn family_params(&self) -> Result<InitialDataParams> {
        let need = |v: Option<f64>, key: &str| v.ok_or_else(|| Error::Config(format!("init.{key} is required for kind = director_family")));
        Ok(InitialDataParams {
            lambda: need(self.lambda, "lambda")?,
            n: need(self.n, "N")?,
            theta: need(self.theta, "theta")?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "yes")]
    pub nonlinear: bool,
    #[serde(default = "yes")]
    pub couple_fluid: bool,
    #[serde(default)]
    pub seed: u64,
    /// Calibration constant in `K = C_cal (H + ||w_in||_Y + 1)`.
    #[serde(default = "one")]
    pub c_cal: f64,
    /// Growth of `sup |grad n|` over its initial value that stops the run.
    #[serde(default = "default_blowup")]
    pub blowup_threshold: f64,
    #[serde(default = "default_remap_tol")]
    pub remap_loss_tol: f64,
}

fn yes() -> bool {
    true
}

fn one() -> f64 {
    1.0
}

fn default_blowup() -> f64 {
    1e3
}

fn default_remap_tol() -> f64 {
    1e-8
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            nonlinear: true,
            couple_fluid: true,
            seed: 0,
            c_cal: 1.0,
            blowup_threshold: default_blowup(),
            remap_loss_tol: default_remap_tol(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub grid: GridConfig,
    pub phys: PhysParams,
    #[serde(default)]
    pub norms: NormParams,
    pub time: TimeConfig,
    pub init: InitConfig,
    #[serde(default)]
    pub run: RunConfig,
}

impl SimConfig {
    /// Parse and validate.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SimConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let grid = self.grid.to_grid()?;
        self.phys.validate()?;
        self.norms.validate()?;
        let t = &self.time;
        if !(t.dt > 0.0 && t.dt.is_finite()) {
            return Err(Error::Config(format!("time.dt = {} must be positive", t.dt)));
        }
        if !(t.t_end > 0.0 && t.t_end.is_finite()) {
            return Err(Error::Config(format!("time.t_end = {} must be positive", t.t_end)));
        }
        if t.diag_every == 0 {
            return Err(Error::Config("time.diag_every must be at least 1".into()));
        }
        let r = &self.run;
        if !(r.c_cal > 0.0 && r.c_cal.is_finite()) {
            return Err(Error::Config(format!("run.c_cal = {} must be positive", r.c_cal)));
        }
        if !(r.blowup_threshold > 1.0) {
            return Err(Error::Config(format!("run.blowup_threshold = {} must exceed 1", r.blowup_threshold)));
        }
        if !(r.remap_loss_tol > 0.0) {
            return Err(Error::Config(format!("run.remap_loss_tol = {} must be positive", r.remap_loss_tol)));
        }
        if !(self.init.noise >= 0.0 && self.init.noise.is_finite()) {
            return Err(Error::Config(format!("init.noise = {} must be non-negative", self.init.noise)));
        }
        match self.init.kind {
            InitKind::DirectorFamily => self.init.family_params()?.validate(&self.norms)?,
            InitKind::File => {
                if self.init.file.is_none() {
                    return Err(Error::Config("init.file is required for kind = file".into()));
                }
            }
            InitKind::SingleMode => {
                let (Some(j), Some(i), Some(amp)) = (self.init.k_index, self.init.xi_index, self.init.amplitude) else {
                    return Err(Error::Config(
                        "init.k_index, init.xi_index and init.amplitude are required for kind = single_mode".into(),
                    ));
                };
                if grid.storage(j, i).is_none() {
                    return Err(Error::Config(format!("mode ({j}, {i}) is outside the resolved band")));
                }
                if !amp.is_finite() {
                    return Err(Error::Config("init.amplitude must be finite".into()));
                }
            }
        }
        Ok(())
    }

    pub fn flags(&self) -> ModelFlags {
        ModelFlags {
            nonlinear: self.run.nonlinear,
            couple_fluid: self.run.couple_fluid,
        }
    }

    pub fn step_options(&self) -> StepOptions {
        StepOptions {
            flags: self.flags(),
            remap_loss_tol: self.run.remap_loss_tol,
            enforce_cfl: true,
        }
    }

    /// Total step count from `t0` to `t_end`.
    pub fn steps_from(&self, t0: f64, t_end: f64) -> u64 {
        ((t_end - t0) / self.time.dt).round().max(0.0) as u64
    }

    /// Serialize back to flat `block.key = value` lines.
    pub fn to_flat_toml(&self) -> Result<String> {
        let value = toml::Value::try_from(self).map_err(|e| Error::Config(e.to_string()))?;
        let mut out = String::new();
        let toml::Value::Table(blocks) = value else {
            unreachable!("a struct serializes to a table")
        };
        for (block, entries) in &blocks {
            let toml::Value::Table(entries) = entries else {
                continue;
            };
            for (key, v) in entries {
                out.push_str(&format!("{block}.{key} = {v}\n"));
            }
        }
        Ok(out)
    }
}
