use std::ops::{AddAssign, Mul};

use num_complex::Complex64;

use super::fft::fft2;
use super::grid::Grid;
use crate::error::{Error, Result};

/// Fourier coefficients of a field on the sheared frame.
///
/// Label `(k, xi)` carries the physical vertical wavenumber
/// `xi_eff = xi + k * shear_time`. Coefficients are Fourier-series
/// coefficients: a constant field `c` has `coeff(0, 0) = c`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
    shear_time: f64,
}

/// Real samples on the (sheared) collocation grid, row-major over `(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalField {
    grid: Grid,
    values: Vec<f64>,
}

impl PhysicalField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::ShapeMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for a in 0..grid.nx {
            let x = grid.x(a);
            for b in 0..grid.ny {
                values.push(f(x, grid.y(b)));
            }
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn has_non_finite(&self) -> bool {
        self.values.iter().any(|v| !v.is_finite())
    }

    /// Discrete L2 norm `sqrt(sum |f|^2 dx dy)`.
    pub fn l2_norm(&self) -> f64 {
        let cell = self.grid.area() / self.grid.len() as f64;
        (self.values.iter().map(|v| v * v).sum::<f64>() * cell).sqrt()
    }
}

#[inline]
fn parity(a: usize, b: usize) -> f64 {
    if (a + b) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl SpectralField {
    pub fn zeros(grid: Grid, shear_time: f64) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::default(); grid.len()],
            shear_time,
        }
    }

    pub fn from_coeffs(grid: Grid, coeffs: Vec<Complex64>, shear_time: f64) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::ShapeMismatch {
                expected: grid.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            grid,
            coeffs,
            shear_time,
        })
    }

    /// Field with one nonzero label `(j, i)` (signed mode numbers).
    pub fn single_mode(grid: Grid, j: i64, i: i64, amplitude: Complex64, shear_time: f64) -> Result<Self> {
        let (a, b) = grid
            .storage(j, i)
            .ok_or_else(|| Error::BandViolation(format!("mode ({j}, {i}) outside resolved band")))?;
        let mut f = Self::zeros(grid, shear_time);
        f.coeffs[grid.index(a, b)] = amplitude;
        Ok(f)
    }

    /// Real field `amp * exp(i(kx + xi y)) + c.c.` for label `(j, i)`.
    pub fn real_mode(grid: Grid, j: i64, i: i64, amplitude: Complex64, shear_time: f64) -> Result<Self> {
        let mut f = Self::single_mode(grid, j, i, amplitude, shear_time)?;
        let (a, b) = grid.storage(-j, -i).expect("band is symmetric");
        f.coeffs[grid.index(a, b)] += amplitude.conj();
        Ok(f)
    }

    /// Real random field with independent Gaussian coefficients on labels
    /// `|j| <= jmax`, `|i| <= imax` (clamped to the resolved band), scaled by `amplitude`.
    pub fn random_real<R: rand::Rng + ?Sized>(
        grid: Grid,
        rng: &mut R,
        jmax: i64,
        imax: i64,
        amplitude: f64,
        shear_time: f64,
    ) -> Self {
        use rand_distr::Distribution;
        let normal = |rng: &mut R| -> f64 { rand_distr::StandardNormal.sample(rng) };
        let jmax = jmax.min(grid.nx as i64 / 2 - 1);
        let imax = imax.min(grid.ny as i64 / 2 - 1);
        let mut f = Self::zeros(grid, shear_time);
        for j in 0..=jmax {
            for i in -imax..=imax {
                if j == 0 && i < 0 {
                    continue;
                }
                let (a, b) = grid.storage(j, i).expect("inside band");
                let c = if j == 0 && i == 0 {
                    Complex64::new(amplitude * normal(rng), 0.0)
                } else {
                    Complex64::new(amplitude * normal(rng), amplitude * normal(rng))
                };
                f.coeffs[grid.index(a, b)] = c;
                if j != 0 || i != 0 {
                    let (a2, b2) = grid.storage(-j, -i).expect("band is symmetric");
                    f.coeffs[grid.index(a2, b2)] = c.conj();
                }
            }
        }
        f
    }

    #[inline]
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    #[inline]
    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    #[inline]
    pub fn shear_time(&self) -> f64 {
        self.shear_time
    }

    pub(crate) fn set_shear_time(&mut self, s: f64) {
        self.shear_time = s;
    }

    pub fn get(&self, j: i64, i: i64) -> Complex64 {
        self.grid
            .storage(j, i)
            .map(|(a, b)| self.coeffs[self.grid.index(a, b)])
            .unwrap_or_default()
    }

    /// Physical-frame vertical wavenumber of storage slot `(a, b)`.
    #[inline]
    pub fn xi_eff(&self, a: usize, b: usize) -> f64 {
        self.grid.xi(b) + self.grid.k(a) * self.shear_time
    }

    /// Visit every resolved mode as `(k, xi_eff, coeff)`.
    pub fn modes(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        let g = self.grid;
        (0..g.nx).flat_map(move |a| {
            (0..g.ny).filter_map(move |b| {
                if g.is_nyquist(a, b) {
                    None
                } else {
                    Some((g.k(a), self.xi_eff(a, b), self.coeffs[g.index(a, b)]))
                }
            })
        })
    }

    /// Area-weighted sum `area * sum w(k, xi_eff) |c|^2` over resolved modes.
    pub fn weighted_energy(&self, w: impl Fn(f64, f64) -> f64) -> f64 {
        self.grid.area() * self.modes().map(|(k, xi, c)| w(k, xi) * c.norm_sqr()).sum::<f64>()
    }

    /// Continuum L2 norm, including any Nyquist content.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.area() * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn has_non_finite(&self) -> bool {
        self.coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite()))
    }

    /// Largest `|c(-k,-xi) - conj(c(k,xi))|` over the resolved band.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let g = self.grid;
        let mut worst = 0.0f64;
        for a in 0..g.nx {
            for b in 0..g.ny {
                if g.is_nyquist(a, b) {
                    continue;
                }
                let (ma, mb) = g.storage(-g.mode_x(a), -g.mode_y(b)).expect("symmetric band");
                let d = self.coeffs[g.index(ma, mb)] - self.coeffs[g.index(a, b)].conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    /// Zero the Nyquist row and column.
    pub fn truncate_nyquist(&mut self) {
        let g = self.grid;
        for a in 0..g.nx {
            for b in 0..g.ny {
                if g.is_nyquist(a, b) {
                    self.coeffs[g.index(a, b)] = Complex64::default();
                }
            }
        }
    }

    /// Apply a diagonal multiplier `m(k, xi_eff)`; Nyquist slots are zeroed.
    pub fn map_multiplier(&self, m: impl Fn(f64, f64) -> Complex64) -> SpectralField {
        let g = self.grid;
        let mut out = Self::zeros(g, self.shear_time);
        for a in 0..g.nx {
            let k = g.k(a);
            for b in 0..g.ny {
                if g.is_nyquist(a, b) {
                    continue;
                }
                let idx = g.index(a, b);
                out.coeffs[idx] = m(k, self.xi_eff(a, b)) * self.coeffs[idx];
            }
        }
        out
    }

    /// `self += alpha * other`.
    pub fn axpy(&mut self, alpha: f64, other: &SpectralField) -> Result<()> {
        self.check_compatible(other)?;
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c += alpha * o;
        }
        Ok(())
    }

    pub fn scale(&mut self, alpha: f64) {
        for c in &mut self.coeffs {
            *c *= alpha;
        }
    }

    pub fn check_compatible(&self, other: &SpectralField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        // frames built by different step sequences agree only to round-off
        let tol = 1e-9 * (1.0 + self.shear_time.abs());
        if (self.shear_time - other.shear_time).abs() > tol {
            return Err(Error::ShearMismatch(self.shear_time, other.shear_time));
        }
        Ok(())
    }

    /// Interpolate onto the `pad`-refined grid (Nyquist dropped); returns real samples.
    pub(crate) fn to_padded_values(&self) -> Vec<f64> {
        self.to_padded_complex().into_iter().map(|c| c.re).collect()
    }

    /// Complex samples on the padded grid, for fields without conjugate symmetry.
    pub(crate) fn to_padded_complex(&self) -> Vec<Complex64> {
        let g = self.grid;
        let (px, py) = g.padded();
        let mut buf = vec![Complex64::default(); px * py];
        for a in 0..g.nx {
            let j = g.mode_x(a);
            for b in 0..g.ny {
                if g.is_nyquist(a, b) {
                    continue;
                }
                let i = g.mode_y(b);
                let pa = j.rem_euclid(px as i64) as usize;
                let pb = i.rem_euclid(py as i64) as usize;
                buf[pa * py + pb] = self.coeffs[g.index(a, b)] * parity(a, b);
            }
        }
        fft2(&mut buf, px, py, true);
        buf
    }

    /// Project padded-grid samples back onto the resolved band.
    pub(crate) fn from_padded_values(grid: Grid, values: &[f64], shear_time: f64) -> SpectralField {
        let buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::from_padded_complex(grid, buf, shear_time)
    }

    pub(crate) fn from_padded_complex(grid: Grid, mut buf: Vec<Complex64>, shear_time: f64) -> SpectralField {
        let (px, py) = grid.padded();
        fft2(&mut buf, px, py, false);
        let norm = 1.0 / (px * py) as f64;
        let mut out = Self::zeros(grid, shear_time);
        for a in 0..grid.nx {
            let j = grid.mode_x(a);
            for b in 0..grid.ny {
                if grid.is_nyquist(a, b) {
                    continue;
                }
                let i = grid.mode_y(b);
                let pa = j.rem_euclid(px as i64) as usize;
                let pb = i.rem_euclid(py as i64) as usize;
                out.coeffs[grid.index(a, b)] = buf[pa * py + pb] * (norm * parity(a, b));
            }
        }
        out
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        self.axpy(1.0, rhs).expect("incompatible fields in +=");
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;

    fn mul(self, rhs: f64) -> SpectralField {
        let mut out = self.clone();
        out.scale(rhs);
        out
    }
}

/// Forward transform of physical samples (frame offset `shear_time`).
pub fn to_spectral(p: &PhysicalField, shear_time: f64) -> SpectralField {
    let g = *p.grid();
    let mut buf: Vec<Complex64> = p.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft2(&mut buf, g.nx, g.ny, false);
    let norm = 1.0 / g.len() as f64;
    for a in 0..g.nx {
        for b in 0..g.ny {
            buf[g.index(a, b)] *= norm * parity(a, b);
        }
    }
    SpectralField {
        grid: g,
        coeffs: buf,
        shear_time,
    }
}

/// Inverse transform onto the collocation grid; imaginary residue is dropped.
pub fn to_physical(f: &SpectralField) -> PhysicalField {
    let g = f.grid;
    let mut buf = f.coeffs.clone();
    for a in 0..g.nx {
        for b in 0..g.ny {
            buf[g.index(a, b)] *= parity(a, b);
        }
    }
    fft2(&mut buf, g.nx, g.ny, true);
    PhysicalField {
        grid: g,
        values: buf.into_iter().map(|c| c.re).collect(),
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn grid() -> Grid {
        Grid::new(16, 8, PI, 2.0 * PI, 2).unwrap()
    }

    #[test]
    fn constant_field_maps_to_origin() {
        let g = grid();
        let f = to_spectral(&PhysicalField::from_fn(g, |_, _| 2.5), 0.0);
        for (idx, c) in f.coeffs().iter().enumerate() {
            if idx == 0 {
                assert!((c - Complex64::new(2.5, 0.0)).norm() < 1e-14);
            } else {
                assert!(c.norm() < 1e-14);
            }
        }
    }

    #[test]
    fn cosine_splits_into_symmetric_pair() {
        let g = grid();
        let f = to_spectral(&PhysicalField::from_fn(g, |x, _| (3.0 * x).cos()), 0.0);
        assert!((f.get(3, 0) - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        assert!((f.get(-3, 0) - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        let rest: f64 = f.coeffs().iter().map(|c| c.norm()).sum::<f64>() - 1.0;
        assert!(rest.abs() < 1e-13);
    }

    #[test]
    fn round_trip_random_field() {
        let g = grid();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = PhysicalField::new(g, (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
        let back = to_physical(&to_spectral(&p, 0.3));
        let err = p
            .values()
            .iter()
            .zip(back.values())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(err < 1e-12 * p.max_abs());
    }

    #[test]
    fn forward_of_real_field_is_conjugate_symmetric() {
        let g = grid();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = PhysicalField::new(g, (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
        assert!(to_spectral(&p, 0.0).conjugate_symmetry_defect() < 1e-15);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let g = grid();
        assert!(matches!(
            PhysicalField::new(g, vec![0.0; 3]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(SpectralField::from_coeffs(g, vec![Complex64::default(); 5], 0.0).is_err());
    }

    #[test]
    fn sheared_samples_follow_physical_wavenumber() {
        // label (1, 0) at shear time s is cos(x + s y) in physical space, and the
        // collocation sample (a, b) sits at x = X_a - s Y_b, y = Y_b
        let s = 2.0;
        let g = Grid::new(16, 16, PI, PI, 2).unwrap();
        let f = SpectralField::real_mode(g, 1, 0, Complex64::new(0.5, 0.0), s).unwrap();
        let p = to_physical(&f);
        for a in 0..g.nx {
            for b in 0..g.ny {
                let (x, y) = (g.x(a) - s * g.y(b), g.y(b));
                let expect = (x + s * y).cos();
                assert!((p.values()[g.index(a, b)] - expect).abs() < 1e-13);
            }
        }
    }
}
