//! Anisotropic `Y` norm and the running space-time `X` norm.

use serde::{Deserialize, Serialize};

use super::params::NormParams;
use crate::error::{Error, Result};
use crate::spectral::SpectralField;

/// Fourier multiplier applied before a norm; only its modulus matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightOp {
    Identity,
    /// `|Dx|^1/3`
    AbsDx13,
    /// `dx^2 |Dx|^1/3`
    Dxx13,
    /// `dy^2 |Dx|^1/3`, with the physical-frame `xi`.
    Dyy13,
}

impl WeightOp {
    pub fn symbol(&self, k: f64, xi: f64) -> f64 {
        let d13 = || k.abs().cbrt();
        match self {
            WeightOp::Identity => 1.0,
            WeightOp::AbsDx13 => d13(),
            WeightOp::Dxx13 => k * k * d13(),
            WeightOp::Dyy13 => xi * xi * d13(),
        }
    }
}

/// `k = 0` stand-in for the `<1/k>^eps` factor: half the smallest resolved `|k|`.
fn k_floor(f: &SpectralField) -> f64 {
    0.5 * f.grid().dk()
}

/// `|| <Dx>^m <1/Dx>^eps op f ||_{L^2}`.
pub fn y_norm(f: &SpectralField, params: &NormParams, op: WeightOp) -> f64 {
    y_norm_sq(f, params, op).sqrt()
}

pub fn y_norm_sq(f: &SpectralField, params: &NormParams, op: WeightOp) -> f64 {
    let kf = k_floor(f);
    f.weighted_energy(|k, xi| params.lambda_weight(k, kf) * op.symbol(k, xi).powi(2))
}

/// `Y` norm of a vector quantity: the root of the summed squares over fields and ops.
pub fn y_norm_multi(fields: &[&SpectralField], params: &NormParams, ops: &[WeightOp]) -> f64 {
    fields
        .iter()
        .flat_map(|f| ops.iter().map(move |op| y_norm_sq(f, params, *op)))
        .sum::<f64>()
        .sqrt()
}

/// Instantaneous squared integrands of the four `X` terms at one time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct XSample {
    /// `||e^{a A^-1/3 |Dx|^2/3 t} <Dx>^m <1/Dx>^eps f||^2`
    pub sup: f64,
    /// `(1/A) ||... grad f||^2`
    pub grad: f64,
    /// `A^-1/3 ||... |Dx|^1/3 f||^2`
    pub dx13: f64,
    /// `||... dx grad Lap^-1 f||^2`
    pub mix: f64,
}

impl XSample {
    pub fn evaluate(fields: &[&SpectralField], ops: &[WeightOp], t: f64, params: &NormParams, amplitude: f64) -> Self {
        let mut out = XSample::default();
        let a13 = amplitude.cbrt();
        for f in fields {
            let kf = k_floor(f);
            let weight = |k: f64, xi: f64| {
                let time = (2.0 * params.a / a13 * k.abs().powf(2.0 / 3.0) * t).exp();
                let op2: f64 = ops.iter().map(|op| op.symbol(k, xi).powi(2)).sum();
                time * params.lambda_weight(k, kf) * op2
            };
            out.sup += f.weighted_energy(weight);
            out.grad += f.weighted_energy(|k, xi| weight(k, xi) * (k * k + xi * xi)) / amplitude;
            out.dx13 += f.weighted_energy(|k, xi| weight(k, xi) * k.abs().powf(2.0 / 3.0)) / a13;
            out.mix += f.weighted_energy(|k, xi| {
                let rho = k * k + xi * xi;
                if rho == 0.0 {
                    0.0
                } else {
                    weight(k, xi) * k * k / rho
                }
            });
        }
        out
    }
}

/// Running squared `X` norm: running max of the first term, trapezoid
/// integrals of the other three.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct XNormAccumulator {
    /// `[sup, grad, dx13, mix]` squared terms so far.
    pub terms: [f64; 4],
    pub last_t: Option<f64>,
    pub last_sample: XSample,
}

impl XNormAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, sample: XSample, t: f64) -> Result<()> {
        if let Some(last) = self.last_t {
            if t < last {
                return Err(Error::TimeRegression { t, last });
            }
            let h = t - last;
            let prev = self.last_sample;
            self.terms[1] += 0.5 * h * (prev.grad + sample.grad);
            self.terms[2] += 0.5 * h * (prev.dx13 + sample.dx13);
            self.terms[3] += 0.5 * h * (prev.mix + sample.mix);
        }
        self.terms[0] = self.terms[0].max(sample.sup);
        self.last_t = Some(t);
        self.last_sample = sample;
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.last_t.is_none()
    }

    pub fn squared(&self) -> f64 {
        self.terms.iter().sum()
    }

    pub fn value(&self) -> f64 {
        self.squared().sqrt()
    }
}

/// Sample `fields` (after `ops`) at time `t` and fold the sample into `acc`.
pub fn x_norm_update(
    acc: &mut XNormAccumulator,
    fields: &[&SpectralField],
    ops: &[WeightOp],
    t: f64,
    params: &NormParams,
    amplitude: f64,
) -> Result<()> {
    if let Some(last) = acc.last_t {
        if t < last {
            return Err(Error::TimeRegression { t, last });
        }
    }
    acc.push(XSample::evaluate(fields, ops, t, params, amplitude), t)
}
