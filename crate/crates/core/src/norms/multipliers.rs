//! Ghost-weight multipliers. `M1` tracks the enhanced-dissipation scale and
//! `M2` the inviscid-damping mixing; both are bounded and increase in `xi`
//! for `k > 0`, so transport `xi -> xi - k t` makes `sum M |f|^2` decrease.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::spectral::{Grid, SpectralField};

/// `arctan(A^-1/3 |k|^-1/3 sgn(k) xi) + pi/2`; `pi/2` at `k = 0`.
pub fn m1_eval(k: f64, xi: f64, amplitude: f64) -> f64 {
    if k == 0.0 {
        return FRAC_PI_2;
    }
    (amplitude.cbrt().recip() * k.abs().cbrt().recip() * k.signum() * xi).atan() + FRAC_PI_2
}

/// `arctan(xi / k) + pi/2`; at `k = 0` the one-sided limits: `pi` for
/// `xi > 0`, `0` for `xi < 0`, `pi/2` at the origin.
pub fn m2_eval(k: f64, xi: f64) -> f64 {
    if k == 0.0 {
        return if xi > 0.0 {
            PI
        } else if xi < 0.0 {
            0.0
        } else {
            FRAC_PI_2
        };
    }
    (xi / k).atan() + FRAC_PI_2
}

pub fn m_eval(k: f64, xi: f64, amplitude: f64) -> f64 {
    m1_eval(k, xi, amplitude) + m2_eval(k, xi) + 1.0
}

/// `k d/dxi M = A^-1/3 |k|^2/3 / (1 + A^-2/3 |k|^-2/3 xi^2) + k^2 / (k^2 + xi^2)`; zero at `k = 0`.
pub fn m_xi_derivative_weighted(k: f64, xi: f64, amplitude: f64) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    let r = (amplitude * k.abs()).cbrt().recip();
    let c = r * k.abs();
    c / (1.0 + r * r * xi * xi) + k * k / (k * k + xi * xi)
}

/// `M` and `k dM/dxi` tabulated on one grid, frame and amplitude.
#[derive(Clone, Debug)]
pub struct MultiplierGrid {
    grid: Grid,
    shear_time: f64,
    amplitude: f64,
    m: Vec<f64>,
    k_dm: Vec<f64>,
}

impl MultiplierGrid {
    pub fn new(grid: Grid, shear_time: f64, amplitude: f64) -> Self {
        let mut m = vec![0.0; grid.len()];
        let mut k_dm = vec![0.0; grid.len()];
        for a in 0..grid.nx {
            let k = grid.k(a);
            for b in 0..grid.ny {
                let xi = grid.xi(b) + k * shear_time;
                let idx = grid.index(a, b);
                m[idx] = m_eval(k, xi, amplitude);
                k_dm[idx] = m_xi_derivative_weighted(k, xi, amplitude);
            }
        }
        Self {
            grid,
            shear_time,
            amplitude,
            m,
            k_dm,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn shear_time(&self) -> f64 {
        self.shear_time
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn m(&self) -> &[f64] {
        &self.m
    }

    pub fn k_dm(&self) -> &[f64] {
        &self.k_dm
    }

    /// `||sqrt(M) f||^2`.
    pub fn weighted_energy(&self, f: &SpectralField) -> f64 {
        self.sum_against(&self.m, f)
    }

    /// `int k dM/dxi |f|^2`.
    pub fn commutator_energy(&self, f: &SpectralField) -> f64 {
        self.sum_against(&self.k_dm, f)
    }

    fn sum_against(&self, w: &[f64], f: &SpectralField) -> f64 {
        let g = &self.grid;
        let mut s = 0.0;
        for a in 0..g.nx {
            for b in 0..g.ny {
                if !g.is_nyquist(a, b) {
                    let idx = g.index(a, b);
                    s += w[idx] * f.coeffs()[idx].norm_sqr();
                }
            }
        }
        g.area() * s
    }
}

/// Both sides of the coercivity inequality and their difference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coercivity {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// `int k dM/dxi |f|^2 >= (1/(4 A^1/3)) || |Dx|^1/3 f ||^2 - (1/(2A)) ||dy f||^2 + ||dx grad Lap^-1 f||^2`,
/// with both sides as Plancherel sums over the resolved modes.
pub fn coercivity_check(f: &SpectralField, amplitude: f64) -> Coercivity {
    let a13 = amplitude.cbrt();
    let lhs = f.weighted_energy(|k, xi| m_xi_derivative_weighted(k, xi, amplitude));
    let rhs = f.weighted_energy(|k, xi| {
        let k2 = k * k;
        let rho = k2 + xi * xi;
        let mix = if rho == 0.0 { 0.0 } else { k2 / rho };
        k.abs().powf(2.0 / 3.0) / (4.0 * a13) - xi * xi / (2.0 * amplitude) + mix
    });
    Coercivity {
        lhs,
        rhs,
        margin: lhs - rhs,
    }
}
