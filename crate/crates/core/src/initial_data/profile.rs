//! Band-limited stand-in for the Schwartz profile: `phi_hat` is a smooth
//! bump supported on `1 <= |kappa| <= 2`, even, so `phi` is real.

use crate::error::{Error, Result};

/// `exp(-1 / (1 - u^2))` on `|u| < 1`, with `u = 2(|kappa| - 3/2)`.
pub fn bump(kappa: f64) -> f64 {
    let u = 2.0 * (kappa.abs() - 1.5);
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

/// Fourier-series coefficients of `phi(scale * x)` on `[-l, l)` for the
/// modes `kappa_j = j pi / l`, normalized on that grid so that the discrete
/// Plancherel norm equals the continuum value `||phi(scale .)||^2 = 1/scale`.
///
/// A nonzero `shift` gives `phi(scale * x) cos(shift * x)`; pass an on-grid
/// shift so the modulated samples reuse the unmodulated normalization.
/// Index `j` runs over `0..n` in FFT order; the Nyquist slot stays zero.
#[derive(Clone, Debug, PartialEq)]
pub struct BandProfile {
    pub coeffs: Vec<f64>,
    pub l: f64,
    pub scale: f64,
}

impl BandProfile {
    pub fn new(n: usize, l: f64, scale: f64, shift: f64) -> Result<Self> {
        let dk = std::f64::consts::PI / l;
        let half = (n / 2) as i64;
        let k_of = |a: usize| {
            let j = if (a as i64) < half { a as i64 } else { a as i64 - n as i64 };
            j as f64 * dk
        };
        // resolved band must contain the scaled support around the shift
        let k_top = (half - 1) as f64 * dk;
        if shift.abs() + 2.0 * scale >= k_top {
            return Err(Error::Unresolvable(format!(
                "support up to {} exceeds resolved |k| <= {k_top}",
                shift.abs() + 2.0 * scale
            )));
        }
        let mut coeffs = vec![0.0; n];
        let mut base_sq = 0.0;
        let mut hits = 0usize;
        for (a, c) in coeffs.iter_mut().enumerate() {
            if a as i64 == half {
                continue;
            }
            let k = k_of(a);
            let b = bump(k / scale);
            if b > 0.0 {
                hits += 1;
            }
            base_sq += b * b;
            *c = if shift == 0.0 {
                b
            } else {
                0.5 * (bump((k - shift) / scale) + bump((k + shift) / scale))
            };
        }
        if hits < 4 {
            return Err(Error::Unresolvable(format!(
                "only {hits} grid modes inside the support (dk = {dk}, scale = {scale})"
            )));
        }
        // normalize phi itself (unmodulated) to the continuum value 1/scale
        let f = (1.0 / scale / (2.0 * l * base_sq)).sqrt();
        coeffs.iter_mut().for_each(|c| *c *= f);
        Ok(Self { coeffs, l, scale })
    }

    /// `2 l sum |c|^2`.
    pub fn norm_sq(&self) -> f64 {
        2.0 * self.l * self.coeffs.iter().map(|c| c * c).sum::<f64>()
    }

    /// `2 l sum w(kappa_j) |c_j|^2`.
    pub fn weighted_norm_sq(&self, w: impl Fn(f64) -> f64) -> f64 {
        let n = self.coeffs.len();
        let dk = std::f64::consts::PI / self.l;
        let half = (n / 2) as i64;
        let mut s = 0.0;
        for (a, c) in self.coeffs.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            let j = if (a as i64) < half { a as i64 } else { a as i64 - n as i64 };
            s += w(j as f64 * dk) * c * c;
        }
        2.0 * self.l * s
    }
}

/// Profile `phi` on a periodic axis of half-length `l` with `n` modes.
pub fn schwartz_band_profile(n: usize, l: f64) -> Result<BandProfile> {
    BandProfile::new(n, l, 1.0, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_norm_on_grid() {
        let p = schwartz_band_profile(256, 16.0 * PI).unwrap();
        assert!((p.norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn support_is_exact() {
        assert_eq!(bump(0.5), 0.0);
        assert_eq!(bump(2.5), 0.0);
        assert_eq!(bump(1.0), 0.0);
        assert_eq!(bump(2.0), 0.0);
        assert!(bump(1.5) > 0.0);
        assert_eq!(bump(-1.5), bump(1.5));
    }

    #[test]
    fn scaled_support_lies_in_band() {
        let lam = 0.3;
        let p = BandProfile::new(128, 16.0 * PI / lam, lam, 0.0).unwrap();
        let dk = lam / 16.0;
        for (a, c) in p.coeffs.iter().enumerate() {
            let j = if a < 64 { a as f64 } else { a as f64 - 128.0 };
            let k = (j * dk).abs();
            if *c != 0.0 {
                assert!(k > lam && k < 2.0 * lam, "k = {k}");
            }
        }
        assert!((p.norm_sq() - 1.0 / lam).abs() < 1e-12 / lam);
    }

    #[test]
    fn too_coarse_grid_is_rejected() {
        assert!(matches!(BandProfile::new(64, PI, 1.0, 0.0), Err(Error::Unresolvable(_))));
        assert!(matches!(BandProfile::new(16, 16.0 * PI, 1.0, 0.0), Err(Error::Unresolvable(_))));
    }

    #[test]
    fn modulation_halves_the_norm() {
        let plain = BandProfile::new(1024, 16.0 * PI, 1.0, 0.0).unwrap();
        let modulated = BandProfile::new(1024, 16.0 * PI, 1.0, 10.0).unwrap();
        assert!((modulated.norm_sq() - 0.5 * plain.norm_sq()).abs() < 1e-12);
    }
}
