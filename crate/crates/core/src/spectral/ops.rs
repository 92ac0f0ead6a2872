//! Diagonal Fourier multipliers. All of them use the physical-frame
//! wavenumber `xi_eff` and zero the Nyquist row and column.

use num_complex::Complex64;

use super::field::SpectralField;

const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn deriv_x(f: &SpectralField) -> SpectralField {
    f.map_multiplier(|k, _| I * k)
}

/// Physical-frame `d/dy`, i.e. multiplication by `i (xi + k s)`.
pub fn deriv_y_phys(f: &SpectralField) -> SpectralField {
    f.map_multiplier(|_, xi| I * xi)
}

pub fn laplacian(f: &SpectralField) -> SpectralField {
    f.map_multiplier(|k, xi| Complex64::new(-(k * k + xi * xi), 0.0))
}

/// Inverse Laplacian; the `(k, xi_eff) = (0, 0)` mode is sent to zero.
pub fn inv_laplacian(f: &SpectralField) -> SpectralField {
    f.map_multiplier(|k, xi| {
        let m = k * k + xi * xi;
        if m == 0.0 {
            Complex64::default()
        } else {
            Complex64::new(-1.0 / m, 0.0)
        }
    })
}

/// `|D_x|^p`.
pub fn abs_dx_pow(f: &SpectralField, p: f64) -> SpectralField {
    f.map_multiplier(|k, _| {
        if k == 0.0 {
            Complex64::default()
        } else {
            Complex64::new(k.abs().powf(p), 0.0)
        }
    })
}
