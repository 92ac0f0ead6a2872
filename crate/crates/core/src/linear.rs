//! Closed-form Kelvin modes of the linearized vorticity equation
//! `w_t + y w_x - nu Lap w = 0` and the two decay estimates built on them:
//! enhanced dissipation at rate `nu^(1/3) |k|^(2/3)` and `t^-2` inviscid
//! damping of the stream function.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fourier mode `(k, xi0)` with viscosity `nu`.
///
/// `xi0` is the physical vertical wavenumber at the evaluation time; the
/// mode was at `xi0 + k t` initially.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KelvinMode {
    pub k: f64,
    pub xi0: f64,
    pub amplitude: Complex64,
    pub nu: f64,
}

/// `nu int_0^t k^2 + (xi0 + k (t - s))^2 ds`
/// `= nu [k^2 t + ((xi0 + k t)^3 - xi0^3) / (3k)]`, expanded so `k = 0` needs no special case.
pub fn kelvin_exponent(k: f64, xi0: f64, nu: f64, t: f64) -> f64 {
    nu * (k * k * t + xi0 * xi0 * t + xi0 * k * t * t + k * k * t * t * t / 3.0)
}

/// Amplitude at time `t` of the mode observed at physical wavenumber `mode.xi0`.
pub fn kelvin_exact(mode: &KelvinMode, t: f64) -> Complex64 {
    mode.amplitude * (-kelvin_exponent(mode.k, mode.xi0, mode.nu, t)).exp()
}

/// Decay factor of a mode followed from its initial physical wavenumber `xi_initial`.
pub fn kelvin_decay_from_initial(k: f64, xi_initial: f64, nu: f64, t: f64) -> f64 {
    (-kelvin_exponent(k, xi_initial - k * t, nu, t)).exp()
}

/// One `(k, nu)` cell of the enhanced-dissipation study.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayCase {
    pub k: f64,
    /// Initial physical vertical wavenumber.
    pub xi_initial: f64,
    pub nu: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecaySample {
    pub case: DecayCase,
    /// Time at which the envelope first drops below `exp(-depth)`.
    pub decay_time: f64,
    /// `depth / decay_time`.
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnhancedDissipationFit {
    /// Prefactor in `rate = c * k^p * nu^q`.
    pub c: f64,
    pub k_exponent: f64,
    pub nu_exponent: f64,
    /// `log(rate) - log(fit)` for each sample.
    pub residuals: Vec<f64>,
    pub samples: Vec<DecaySample>,
}

/// Time at which the decay envelope of `case` reaches `exp(-depth)`.
///
/// The integrand `nu (k^2 + xi_eff^2)` is positive, so the amplitude is
/// monotone and the envelope `sup_{s >= t} |w(s)|` coincides with it.
pub fn decay_time(case: &DecayCase, depth: f64) -> Result<f64> {
    if !(depth > 0.0) {
        return Err(Error::DegenerateFit(format!("decay depth {depth} must be positive")));
    }
    let exponent = |t: f64| kelvin_exponent(case.k, case.xi_initial - case.k * t, case.nu, t);
    let mut hi = 1.0;
    while exponent(hi) < depth {
        hi *= 2.0;
        if hi > 1e30 {
            return Err(Error::DegenerateFit(format!(
                "mode k = {}, nu = {} never decays by exp(-{depth})",
                case.k, case.nu
            )));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if exponent(mid) < depth {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Fit `rate = c k^p nu^q` over the cases, with rates measured at decay depth
/// `exp(-depth)`.
///
/// Needs at least four distinct `|k|` values and two distinct `nu`;
/// `k = 0` cases carry no shear enhancement and are skipped.
pub fn enhanced_dissipation_check(cases: &[DecayCase], depth: f64) -> Result<EnhancedDissipationFit> {
    let mut samples = Vec::new();
    for case in cases.iter().filter(|c| c.k != 0.0) {
        let tau = decay_time(case, depth)?;
        samples.push(DecaySample {
            case: *case,
            decay_time: tau,
            rate: depth / tau,
        });
    }
    let mut ks: Vec<f64> = samples.iter().map(|s| s.case.k.abs()).collect();
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    let mut nus: Vec<f64> = samples.iter().map(|s| s.case.nu).collect();
    nus.sort_by(f64::total_cmp);
    nus.dedup();
    if ks.len() < 4 || nus.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "need >= 4 distinct |k| and >= 2 distinct nu (got {} and {})",
            ks.len(),
            nus.len()
        )));
    }
    let rows: Vec<[f64; 3]> = samples
        .iter()
        .map(|s| [1.0, s.case.k.abs().ln(), s.case.nu.ln()])
        .collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.rate.ln()).collect();
    let beta = least_squares(&rows, &ys)?;
    let residuals = rows
        .iter()
        .zip(&ys)
        .map(|(r, y)| y - (beta[0] + beta[1] * r[1] + beta[2] * r[2]))
        .collect();
    Ok(EnhancedDissipationFit {
        c: beta[0].exp(),
        k_exponent: beta[1],
        nu_exponent: beta[2],
        residuals,
        samples,
    })
}

/// Solve the normal equations of a 3-parameter linear model.
fn least_squares(rows: &[[f64; 3]], ys: &[f64]) -> Result<[f64; 3]> {
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for (r, y) in rows.iter().zip(ys) {
        for i in 0..3 {
            aty[i] += r[i] * y;
            for j in 0..3 {
                ata[i][j] += r[i] * r[j];
            }
        }
    }
    // Gaussian elimination with partial pivoting
    let mut m = [[0.0; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&ata[i]);
        m[i][3] = aty[i];
    }
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty");
        if m[piv][col].abs() < 1e-12 {
            return Err(Error::DegenerateFit("singular normal equations".into()));
        }
        m.swap(col, piv);
        for r in 0..3 {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..4 {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Ok([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::DegenerateFit("need at least two points".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit("abscissae coincide".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

/// Stream-function amplitude `|Lap^-1 w|` at time `t` for a unit-amplitude mode
/// followed from its initial wavenumber.
pub fn stream_function_amplitude(case: &DecayCase, t: f64) -> f64 {
    let xi_t = case.xi_initial - case.k * t;
    kelvin_decay_from_initial(case.k, case.xi_initial, case.nu, t) / (case.k * case.k + xi_t * xi_t)
}

/// Log-log slope of the stream function over `t_grid`, after dividing out
/// the viscous envelope so only the algebraic mixing decay remains.
pub fn inviscid_damping_check(case: &DecayCase, t_grid: &[f64]) -> Result<f64> {
    if case.k == 0.0 {
        return Err(Error::DegenerateFit("inviscid damping needs k != 0".into()));
    }
    if t_grid.len() < 3 {
        return Err(Error::DegenerateFit("t window needs at least three samples".into()));
    }
    let (t0, t1) = (t_grid[0], t_grid[t_grid.len() - 1]);
    if !(t0 > 0.0 && t1 >= 2.0 * t0) {
        return Err(Error::DegenerateFit(format!("t window [{t0}, {t1}] too short")));
    }
    let ys: Vec<f64> = t_grid
        .iter()
        .map(|&t| stream_function_amplitude(case, t) / kelvin_decay_from_initial(case.k, case.xi_initial, case.nu, t))
        .collect();
    log_log_slope(t_grid, &ys)
}

/// Both sides of `|phi(t)| <= C <t>^-2 (1 + k^2 + (xi + k t)^2) / k^4 |w_in|`
/// (envelope factor included on both sides), for the mode observed at `xi` at time `t`.
pub fn inviscid_damping_bound(k: f64, xi: f64, nu: f64, t: f64, c: f64) -> (f64, f64) {
    let envelope = (-kelvin_exponent(k, xi, nu, t)).exp();
    let lhs = envelope / (k * k + xi * xi);
    let xi_in = xi + k * t;
    let rhs = c / (1.0 + t * t) * (1.0 + k * k + xi_in * xi_in) / k.powi(4) * envelope;
    (lhs, rhs)
}
