//! Large-energy director family `d = lam^theta phi(lam x) phi(y) cos(N y) e1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::profile::BandProfile;
use crate::error::{Error, Result};
use crate::norms::{y_norm_multi, NormParams, D13_OPS, HESS13_OPS};
use crate::spectral::{deriv_x, deriv_y_phys, to_physical, to_spectral, Grid, PhysicalField, SpectralField};

/// Printed with every report: the constant is not known explicitly.
pub const C_CAL_CAVEAT: &str =
    "C(m,eps,delta) is not specified; A_bar, K and the gap verdict scale with the calibration constant C_cal";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialDataParams {
    pub lambda: f64,
    /// Vertical carrier frequency; rounded to the nearest grid frequency on construction.
    #[serde(rename = "N")]
    pub n: f64,
    pub theta: f64,
}

impl InitialDataParams {
    pub fn validate(&self, norms: &NormParams) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(Error::InvalidParam(format!("lambda = {} outside (0, 1)", self.lambda)));
        }
        if !(self.n >= 4.0 && self.n.is_finite()) {
            return Err(Error::InvalidParam(format!("N = {} must be >= 4", self.n)));
        }
        if !(self.theta > norms.eps + 1.0 / 6.0 && self.theta.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "theta = {} must exceed eps + 1/6 = {:.4}",
                self.theta,
                norms.eps + 1.0 / 6.0
            )));
        }
        Ok(())
    }

    /// `mu = theta - eps - 1/6`, the exponent of the low-order norm in `lambda`.
    pub fn mu(&self, norms: &NormParams) -> f64 {
        self.theta - norms.eps - 1.0 / 6.0
    }

    /// Carrier frequency snapped to the grid.
    pub fn n_on_grid(&self, grid: &Grid) -> f64 {
        (self.n / grid.dxi()).round() * grid.dxi()
    }
}

/// The two one-dimensional factors of the family on `grid`, amplitude excluded.
fn factors(params: &InitialDataParams, grid: &Grid) -> Result<(BandProfile, BandProfile)> {
    let x = BandProfile::new(grid.nx, grid.lx, params.lambda, 0.0)
        .map_err(|e| Error::BandViolation(format!("x factor: {e}")))?;
    let y = BandProfile::new(grid.ny, grid.ly, 1.0, params.n_on_grid(grid))
        .map_err(|e| Error::BandViolation(format!("y factor: {e}")))?;
    Ok((x, y))
}

/// `d_in` exactly as written: first component only, `u_in = 0`.
pub fn make_director_data(params: &InitialDataParams, grid: &Grid) -> Result<[SpectralField; 3]> {
    let (x, y) = factors(params, grid)?;
    let amp = params.lambda.powf(params.theta);
    let mut d1 = SpectralField::zeros(*grid, 0.0);
    for a in 0..grid.nx {
        if x.coeffs[a] == 0.0 {
            continue;
        }
        for b in 0..grid.ny {
            d1.coeffs_mut()[grid.index(a, b)] = Complex64::new(amp * x.coeffs[a] * y.coeffs[b], 0.0);
        }
    }
    let z = SpectralField::zeros(*grid, 0.0);
    Ok([d1, z.clone(), z])
}

/// Unit director with the family as its tilt angle:
/// `n = (cos psi, sin psi, 0)`, `psi = lam^theta phi(lam x) phi(y) cos(N y)`.
///
/// The literal data is parallel to `e1` and so leaves the sphere; this keeps
/// the same profile while satisfying `|n| = 1`.
pub fn lift_to_sphere(psi: &SpectralField) -> [SpectralField; 3] {
    let p = to_physical(psi);
    let g = *psi.grid();
    let s = psi.shear_time();
    let map = |f: fn(f64) -> f64| {
        let vals: Vec<f64> = p.values().iter().map(|&v| f(v)).collect();
        let mut out = to_spectral(&PhysicalField::new(g, vals).expect("same grid"), s);
        out.truncate_nyquist();
        out
    };
    [map(|v| v.cos() - 1.0), map(f64::sin), SpectralField::zeros(g, s)]
}

/// Family data lifted to the sphere, as used to start a simulation.
pub fn make_director_state(params: &InitialDataParams, grid: &Grid) -> Result<[SpectralField; 3]> {
    let [psi, _, _] = make_director_data(params, grid)?;
    Ok(lift_to_sphere(&psi))
}

/// Grid used by the data report: 32 modes per `lambda` in `k`, 16 per unit in `xi`,
/// wide enough for the carrier band `N +- 2`.
pub fn report_grid(params: &InitialDataParams) -> Result<Grid> {
    let dk = params.lambda / 32.0;
    let dxi = 1.0 / 16.0;
    let need = (2.0 * ((params.n.round() + 3.0) / dxi + 2.0)) as usize;
    let ny = need.next_power_of_two().max(64);
    Grid::new(256, ny, std::f64::consts::PI / dk, std::f64::consts::PI / dxi, 2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DataReport {
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "E")]
    pub e: f64,
    /// `||w_in||_Y`; zero for this family.
    pub w_omega: f64,
    pub gap_ok: bool,
    #[serde(rename = "A_bar")]
    pub a_bar: f64,
    #[serde(rename = "A_max")]
    pub a_max: f64,
    pub kappa: f64,
    #[serde(rename = "K")]
    pub k_boot: f64,
    pub c_cal: f64,
    pub note: String,
}

/// Threshold `A_bar = C_cal (H + W + 1)^kappa` and smallness ceiling `A_max = L^(-1/delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub a_bar: f64,
    pub a_max: f64,
    pub kappa: f64,
}

pub fn amplitude_threshold(h: f64, w_omega: f64, l: f64, norms: &NormParams, c_cal: f64) -> Threshold {
    let kappa = norms.kappa();
    Threshold {
        a_bar: c_cal * (h + w_omega + 1.0).powf(kappa),
        a_max: l.powf(-1.0 / norms.delta),
        kappa,
    }
}

fn assemble(l: f64, h: f64, e: f64, w_omega: f64, norms: &NormParams, c_cal: f64) -> DataReport {
    let th = amplitude_threshold(h, w_omega, l, norms, c_cal);
    DataReport {
        l,
        h,
        e,
        w_omega,
        gap_ok: th.a_bar < th.a_max,
        a_bar: th.a_bar,
        a_max: th.a_max,
        kappa: th.kappa,
        k_boot: crate::norms::bootstrap_constant(h, w_omega, c_cal),
        c_cal,
        note: C_CAL_CAVEAT.to_string(),
    }
}

/// `L = || |Dx|^1/3 d ||_Y`, `H = || (dx^2, dy^2) |Dx|^1/3 d ||_Y`, `E = ||grad d||^2`.
pub fn norms_report(d: &[SpectralField; 3], omega: Option<&SpectralField>, norms: &NormParams, c_cal: f64) -> DataReport {
    let fields: Vec<&SpectralField> = d.iter().collect();
    let l = y_norm_multi(&fields, norms, D13_OPS);
    let h = y_norm_multi(&fields, norms, HESS13_OPS);
    let e: f64 = d
        .iter()
        .map(|c| deriv_x(c).l2_norm().powi(2) + deriv_y_phys(c).l2_norm().powi(2))
        .sum();
    let w_omega = omega.map_or(0.0, |w| y_norm_multi(&[w], norms, &[crate::norms::WeightOp::Identity]));
    assemble(l, h, e, w_omega, norms, c_cal)
}

/// `L`, `H`, `E` of the family, summed axis by axis (the data is separable).
pub fn family_norms(params: &InitialDataParams, grid: &Grid, norms: &NormParams) -> Result<(f64, f64, f64)> {
    let (x, y) = factors(params, grid)?;
    let amp2 = params.lambda.powf(2.0 * params.theta);
    let kf = 0.5 * grid.dk();
    let lam = |k: f64| norms.lambda_weight(k, kf);
    let d13 = |k: f64| k.abs().powf(2.0 / 3.0);
    let x_l = x.weighted_norm_sq(|k| lam(k) * d13(k));
    let x_hx = x.weighted_norm_sq(|k| lam(k) * d13(k) * k.powi(4));
    let y0 = y.norm_sq();
    let l2 = amp2 * x_l * y0;
    let h2 = amp2 * (x_hx * y0 + x_l * y.weighted_norm_sq(|xi| xi.powi(4)));
    let e = amp2 * (x.weighted_norm_sq(|k| k * k) * y0 + x.norm_sq() * y.weighted_norm_sq(|xi| xi * xi));
    Ok((l2.sqrt(), h2.sqrt(), e))
}

/// Data report of the family on its automatic grid.
pub fn family_report(params: &InitialDataParams, norms: &NormParams, c_cal: f64) -> Result<DataReport> {
    params.validate(norms)?;
    let grid = report_grid(params)?;
    let (l, h, e) = family_norms(params, &grid, norms)?;
    Ok(assemble(l, h, e, 0.0, norms, c_cal))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapCheck {
    pub mu: f64,
    pub kappa: f64,
    /// `C_cal (N^2 lam^mu)^kappa < (lam^mu)^(-1/delta)`.
    pub gap_ok: bool,
    /// Largest `N` passing the inequality above:
    /// `C_cal^(-1/(2 kappa)) lam^(-(mu/2)(1 + 1/(delta kappa)))`.
    pub n_max: f64,
    /// The power `lam^(-(mu/2)(1/delta + kappa))` as printed alongside the
    /// inequality; it omits the `1/kappa` from taking the `kappa`-th root.
    pub n_bound_printed: f64,
    pub printed_form_ok: bool,
}

pub fn gap_check(params: &InitialDataParams, norms: &NormParams, c_cal: f64) -> Result<GapCheck> {
    let mu = params.mu(norms);
    if !(mu > 0.0) {
        return Err(Error::InvalidParam(format!("mu = theta - eps - 1/6 = {mu} must be positive")));
    }
    let kappa = norms.kappa();
    let lam = params.lambda;
    let lhs = c_cal * (params.n * params.n * lam.powf(mu)).powf(kappa);
    let rhs = lam.powf(mu).powf(-1.0 / norms.delta);
    let n_max = c_cal.powf(-0.5 / kappa) * lam.powf(-(mu / 2.0) * (1.0 + 1.0 / (norms.delta * kappa)));
    let printed = lam.powf(-(mu / 2.0) * (1.0 / norms.delta + kappa));
    Ok(GapCheck {
        mu,
        kappa,
        gap_ok: lhs < rhs,
        n_max,
        n_bound_printed: printed,
        printed_form_ok: params.n < printed,
    })
}

/// `theta` giving `A^delta L = target` at fixed `lambda`, `N` on `grid`;
/// `L` is proportional to `lambda^theta`, so one evaluation fixes it.
pub fn theta_for_smallness(
    lambda: f64,
    n: f64,
    grid: &Grid,
    norms: &NormParams,
    amplitude: f64,
    target: f64,
) -> Result<f64> {
    let probe = InitialDataParams { lambda, n, theta: 0.0 };
    let (l0, _, _) = family_norms(&probe, grid, norms)?;
    Ok((target / (amplitude.powf(norms.delta) * l0)).ln() / lambda.ln())
}
