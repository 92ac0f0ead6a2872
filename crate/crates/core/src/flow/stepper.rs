//! Integrating-factor Heun scheme in the sheared frame.
//!
//! Dissipation is integrated exactly: along one step the label `(k, xi)`
//! sees `xi_eff(tau) = xi_eff0 - k tau`, so
//! `int_0^h k^2 + xi_eff(tau)^2 dtau = (k^2 + xi0^2) h - xi0 k h^2 + k^2 h^3 / 3`.
//! Nonlinear terms use the explicit two-stage scheme
//! `u* = E(u0 + h N0)`, `u1 = E(u0 + h/2 N0) + h/2 N(u*)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::director::{renormalize_director, RenormReport};
use super::params::{ModelFlags, PhysParams};
use super::rhs::{nonlinear_terms, PointStats, Tendency};
use super::state::FlowState;
use crate::error::{Error, Result};
use crate::spectral::{remap_shear_frame, SpectralField};

/// Per-step controls that are not physics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepOptions {
    pub flags: ModelFlags,
    /// Abort if one remap discards more than this fraction of the total energy.
    pub remap_loss_tol: f64,
    /// Skip the CFL check (used by convergence studies that probe large steps).
    pub enforce_cfl: bool,
}

impl Default for StepOptions {
    fn default() -> Self {
        Self {
            flags: ModelFlags::default(),
            remap_loss_tol: 1e-8,
            enforce_cfl: true,
        }
    }
}

impl StepOptions {
    pub fn linear() -> Self {
        Self {
            flags: ModelFlags::LINEAR,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub dt: f64,
    /// `sup |u|` at the start of the step (padded grid).
    pub max_u: f64,
    /// `sup |grad n|` at the start of the step (padded grid).
    pub max_grad_n: f64,
    /// `max | |n| - 1 |` before renormalization.
    pub sphere_defect: f64,
    pub min_abs_n: f64,
    pub renorm_correction: f64,
    /// Fraction of total energy discarded by a frame remap during this step.
    pub remap_loss: f64,
    pub remapped: bool,
    pub non_finite: bool,
}

/// Largest admissible step for the explicit nonlinear terms.
pub fn cfl_bound(stats: &PointStats, state: &FlowState, params: &PhysParams) -> f64 {
    let g = state.grid();
    let xi_eff_max = g.xi_max() + g.k_max() * state.shear_time().abs();
    let inv_a = 1.0 / params.amplitude;
    let rate = stats.max_u * (g.k_max() + xi_eff_max) * inv_a
        + params.gam * stats.max_grad_n * stats.max_grad_n * inv_a
        + 1.0;
    0.5 / rate
}

/// Exact linear propagator over `[t, t + h]` for one field; also advances the frame.
fn propagate(f: &SpectralField, diffusivity: f64, h: f64) -> SpectralField {
    let mut out = f.map_multiplier(|k, xi0| {
        let integral = (k * k + xi0 * xi0) * h - xi0 * k * h * h + k * k * h * h * h / 3.0;
        Complex64::new((-diffusivity * integral).exp(), 0.0)
    });
    out.set_shear_time(f.shear_time() - h);
    out
}

fn combine(state: &FlowState, n: &Tendency, h: f64) -> FlowState {
    let mut out = state.clone();
    out.omega.axpy(h, &n.omega).expect("same frame");
    for (c, nc) in out.d.iter_mut().zip(&n.d) {
        c.axpy(h, nc).expect("same frame");
    }
    out
}

fn propagate_state(state: &FlowState, params: &PhysParams, h: f64) -> FlowState {
    let kd = params.director_diffusivity();
    FlowState {
        omega: propagate(&state.omega, params.omega_diffusivity(), h),
        d: [
            propagate(&state.d[0], kd, h),
            propagate(&state.d[1], kd, h),
            propagate(&state.d[2], kd, h),
        ],
        t: state.t + h,
    }
}

/// Remap when the frame offset drifts past half a remap period.
fn maybe_remap(state: &mut FlowState, tol: f64) -> Result<(bool, f64)> {
    let period = state.grid().remap_period();
    let s = state.shear_time();
    let turns = (s / period).round();
    if turns == 0.0 {
        return Ok((false, 0.0));
    }
    let target = s - turns * period;
    let total = state.total_energy();
    let mut lost = 0.0;
    let (w, l) = remap_shear_frame(&state.omega, target)?;
    state.omega = w;
    lost += l;
    for c in state.d.iter_mut() {
        let (f, l) = remap_shear_frame(c, target)?;
        *c = f;
        lost += l;
    }
    let fraction = if total > 0.0 { lost / total } else { 0.0 };
    if fraction > tol {
        return Err(Error::RemapLoss { fraction, tol });
    }
    Ok((true, fraction))
}

/// Advance `state` by `dt` in rescaled time.
pub fn step(state: &FlowState, params: &PhysParams, dt: f64, opts: &StepOptions) -> Result<(FlowState, StepReport)> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParam(format!("dt = {dt} must be positive")));
    }
    let flags = opts.flags;
    let (n0, stats) = nonlinear_terms(state, params, flags);
    let mut report = StepReport {
        dt,
        max_u: stats.max_u,
        max_grad_n: stats.max_grad_n,
        min_abs_n: 1.0,
        ..Default::default()
    };
    if stats.non_finite || state.has_non_finite() {
        report.non_finite = true;
        return Ok((state.clone(), report));
    }
    if opts.enforce_cfl && flags.nonlinear {
        let bound = cfl_bound(&stats, state, params);
        if dt > bound {
            return Err(Error::CflViolation { dt, bound });
        }
    }

    let mut next = if flags.nonlinear {
        let predictor = propagate_state(&combine(state, &n0, dt), params, dt);
        let (n1, _) = nonlinear_terms(&predictor, params, flags);
        let mut next = propagate_state(&combine(state, &n0, 0.5 * dt), params, dt);
        next.omega.axpy(0.5 * dt, &n1.omega)?;
        for (c, nc) in next.d.iter_mut().zip(&n1.d) {
            c.axpy(0.5 * dt, nc)?;
        }
        next
    } else {
        propagate_state(state, params, dt)
    };
    if next.has_non_finite() {
        report.non_finite = true;
        return Ok((next, report));
    }
    if flags.nonlinear {
        let (d, rep): ([SpectralField; 3], RenormReport) = renormalize_director(&next.d)?;
        next.d = d;
        for c in next.d.iter_mut() {
            c.truncate_nyquist();
        }
        report.sphere_defect = rep.max_defect;
        report.min_abs_n = rep.min_norm;
        report.renorm_correction = rep.max_correction;
    }
    let (remapped, loss) = maybe_remap(&mut next, opts.remap_loss_tol)?;
    report.remapped = remapped;
    report.remap_loss = loss;
    Ok((next, report))
}
