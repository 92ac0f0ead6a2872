//! Right-hand sides of the rescaled perturbation system in the sheared frame.
//!
//! ```text
//! d_t w = (1/A) [ nu  Lap w - u.grad w + lam (dx(dy d . Lap d) - dy(dx d . Lap d)) ]
//! d_t d = (1/A) [ gam Lap d - u.grad d + gam |grad d|^2 (d + e1) ]
//! u = perp-grad Lap^-1 w
//! ```
//! The transport `y dx` is absorbed by the frame and never appears.

use num_complex::Complex64;

use super::params::{ModelFlags, PhysParams};
use super::state::FlowState;
use crate::error::Result;
use crate::spectral::{deriv_x, deriv_y_phys, inv_laplacian, laplacian, multiply_dealiased, SpectralField};

/// Right-hand side of both equations.
#[derive(Clone, Debug)]
pub struct Tendency {
    pub omega: SpectralField,
    pub d: [SpectralField; 3],
}

impl Tendency {
    pub(crate) fn zeros_like(state: &FlowState) -> Self {
        let z = SpectralField::zeros(*state.grid(), state.shear_time());
        Self {
            omega: z.clone(),
            d: [z.clone(), z.clone(), z],
        }
    }
}

/// Pointwise maxima gathered while assembling nonlinear terms.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PointStats {
    pub max_u: f64,
    pub max_grad_n: f64,
    pub non_finite: bool,
}

/// `u = (dy Lap^-1 w, -dx Lap^-1 w)` with physical-frame derivatives.
pub fn velocity_from_vorticity(omega: &SpectralField) -> (SpectralField, SpectralField) {
    let psi = inv_laplacian(omega);
    let u1 = deriv_y_phys(&psi);
    let mut u2 = deriv_x(&psi);
    u2.scale(-1.0);
    (u1, u2)
}

/// Vorticity forcing `dx(dy d . Lap d) - dy(dx d . Lap d)` before the `lam/A` factor.
pub fn leslie_stress_curl(d: &[SpectralField; 3]) -> Result<SpectralField> {
    let g = *d[0].grid();
    let s = d[0].shear_time();
    let mut sx = SpectralField::zeros(g, s);
    let mut sy = SpectralField::zeros(g, s);
    for c in d {
        let lap = laplacian(c);
        sx += &multiply_dealiased(&[&deriv_x(c), &lap], 2)?;
        sy += &multiply_dealiased(&[&deriv_y_phys(c), &lap], 2)?;
    }
    let mut out = deriv_x(&sy);
    out.axpy(-1.0, &deriv_y_phys(&sx))?;
    Ok(out)
}

/// Nonlinear parts of both right-hand sides, assembled on the padded grid.
///
/// Linear dissipation is excluded; the stepper integrates it exactly.
pub(crate) fn nonlinear_terms(state: &FlowState, params: &PhysParams, flags: ModelFlags) -> (Tendency, PointStats) {
    let g = *state.grid();
    let s = state.shear_time();
    let inv_a = 1.0 / params.amplitude;

    let d_vals: Vec<Vec<f64>> = state.d.iter().map(|c| c.to_padded_values()).collect();
    let dx_vals: Vec<Vec<f64>> = state.d.iter().map(|c| deriv_x(c).to_padded_values()).collect();
    let dy_vals: Vec<Vec<f64>> = state.d.iter().map(|c| deriv_y_phys(c).to_padded_values()).collect();
    let npts = d_vals[0].len();

    let mut grad2 = vec![0.0; npts];
    for c in 0..3 {
        for p in 0..npts {
            grad2[p] += dx_vals[c][p] * dx_vals[c][p] + dy_vals[c][p] * dy_vals[c][p];
        }
    }

    let coupled = flags.couple_fluid;
    let (u1_vals, u2_vals) = if coupled {
        let (u1, u2) = velocity_from_vorticity(&state.omega);
        (u1.to_padded_values(), u2.to_padded_values())
    } else {
        (vec![0.0; npts], vec![0.0; npts])
    };

    let mut stats = PointStats::default();
    for p in 0..npts {
        let u = (u1_vals[p] * u1_vals[p] + u2_vals[p] * u2_vals[p]).sqrt();
        let gn = grad2[p].sqrt();
        if !(u.is_finite() && gn.is_finite()) {
            stats.non_finite = true;
        }
        stats.max_u = stats.max_u.max(u);
        stats.max_grad_n = stats.max_grad_n.max(gn);
    }

    let mut out = Tendency::zeros_like(state);
    if !flags.nonlinear {
        return (out, stats);
    }

    for c in 0..3 {
        let e1 = if c == 0 { 1.0 } else { 0.0 };
        let vals: Vec<f64> = (0..npts)
            .map(|p| {
                let adv = u1_vals[p] * dx_vals[c][p] + u2_vals[p] * dy_vals[c][p];
                inv_a * (params.gam * grad2[p] * (d_vals[c][p] + e1) - adv)
            })
            .collect();
        out.d[c] = SpectralField::from_padded_values(g, &vals, s);
    }

    if coupled {
        let wx = deriv_x(&state.omega).to_padded_values();
        let wy = deriv_y_phys(&state.omega).to_padded_values();
        let adv: Vec<f64> = (0..npts).map(|p| u1_vals[p] * wx[p] + u2_vals[p] * wy[p]).collect();
        let mut sx = vec![0.0; npts];
        let mut sy = vec![0.0; npts];
        for c in 0..3 {
            let lap = laplacian(&state.d[c]).to_padded_values();
            for p in 0..npts {
                sx[p] += dx_vals[c][p] * lap[p];
                sy[p] += dy_vals[c][p] * lap[p];
            }
        }
        let sx = SpectralField::from_padded_values(g, &sx, s);
        let sy = SpectralField::from_padded_values(g, &sy, s);
        let mut w = SpectralField::from_padded_values(g, &adv, s);
        w.scale(-inv_a);
        w.axpy(params.lam * inv_a, &deriv_x(&sy)).expect("same frame");
        w.axpy(-params.lam * inv_a, &deriv_y_phys(&sx)).expect("same frame");
        out.omega = w;
    }
    (out, stats)
}

fn linear_part(f: &SpectralField, diffusivity: f64) -> SpectralField {
    f.map_multiplier(|k, xi| Complex64::new(-diffusivity * (k * k + xi * xi), 0.0))
}

/// Full director tendency `(1/A)[gam Lap d - u.grad d + gam |grad d|^2 (d + e1)]`.
pub fn director_rhs(state: &FlowState, params: &PhysParams) -> [SpectralField; 3] {
    director_rhs_with(state, params, ModelFlags::default())
}

pub fn director_rhs_with(state: &FlowState, params: &PhysParams, flags: ModelFlags) -> [SpectralField; 3] {
    let (n, _) = nonlinear_terms(state, params, flags);
    let kappa = params.director_diffusivity();
    let mut out = n.d;
    for (o, c) in out.iter_mut().zip(&state.d) {
        *o += &linear_part(c, kappa);
    }
    out
}

/// Full vorticity tendency `(1/A)[nu Lap w - u.grad w + lam F]`.
pub fn vorticity_rhs(state: &FlowState, params: &PhysParams) -> SpectralField {
    vorticity_rhs_with(state, params, ModelFlags::default())
}

pub fn vorticity_rhs_with(state: &FlowState, params: &PhysParams, flags: ModelFlags) -> SpectralField {
    let (n, _) = nonlinear_terms(state, params, flags);
    let mut out = n.omega;
    out += &linear_part(&state.omega, params.omega_diffusivity());
    out
}
