use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Periodic box `[-lx, lx] x [-ly, ly]` with `nx x ny` Fourier modes.
///
/// Storage follows FFT order: index `a` in `0..nx` maps to the signed mode
/// number `a` for `a < nx/2` and `a - nx` otherwise. The most negative
/// index (`-nx/2`) is the Nyquist mode and is excluded from the resolved
/// band.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    pub dealias_pad: usize,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64, dealias_pad: usize) -> Result<Self> {
        let grid = Grid {
            nx,
            ny,
            lx,
            ly,
            dealias_pad,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// Square box with half-period `l` and padding factor 2.
    pub fn square(n: usize, l: f64) -> Result<Self> {
        Self::new(n, n, l, l, 2)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, n) in [("nx", self.nx), ("ny", self.ny)] {
            if n < 8 || n % 2 != 0 {
                return Err(Error::InvalidParam(format!(
                    "{name} = {n} must be an even integer >= 8"
                )));
            }
        }
        if !(self.lx > 0.0 && self.lx.is_finite() && self.ly > 0.0 && self.ly.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "half-periods must be positive (lx = {}, ly = {})",
                self.lx, self.ly
            )));
        }
        if self.dealias_pad < 2 {
            return Err(Error::InvalidParam(format!(
                "dealias_pad = {} must be >= 2",
                self.dealias_pad
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Horizontal wavenumber spacing `pi / lx`.
    #[inline]
    pub fn dk(&self) -> f64 {
        PI / self.lx
    }

    /// Vertical wavenumber spacing `pi / ly`.
    #[inline]
    pub fn dxi(&self) -> f64 {
        PI / self.ly
    }

    /// Box area `4 lx ly`; converts coefficient sums into continuum L2 norms.
    #[inline]
    pub fn area(&self) -> f64 {
        4.0 * self.lx * self.ly
    }

    #[inline]
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.ny + b
    }

    #[inline]
    pub fn mode_x(&self, a: usize) -> i64 {
        signed_mode(a, self.nx)
    }

    #[inline]
    pub fn mode_y(&self, b: usize) -> i64 {
        signed_mode(b, self.ny)
    }

    #[inline]
    pub fn k(&self, a: usize) -> f64 {
        self.mode_x(a) as f64 * self.dk()
    }

    /// Label (sheared-frame) vertical wavenumber of storage row `b`.
    #[inline]
    pub fn xi(&self, b: usize) -> f64 {
        self.mode_y(b) as f64 * self.dxi()
    }

    /// Storage index for signed mode numbers, or `None` outside the resolved band.
    pub fn storage(&self, j: i64, i: i64) -> Option<(usize, usize)> {
        Some((storage_index(j, self.nx)?, storage_index(i, self.ny)?))
    }

    #[inline]
    pub fn is_nyquist(&self, a: usize, b: usize) -> bool {
        a == self.nx / 2 || b == self.ny / 2
    }

    /// Largest resolved |k|.
    pub fn k_max(&self) -> f64 {
        (self.nx / 2 - 1) as f64 * self.dk()
    }

    /// Largest resolved label |xi|.
    pub fn xi_max(&self) -> f64 {
        (self.ny / 2 - 1) as f64 * self.dxi()
    }

    /// Shear-time increment that shifts column `j` by exactly `j` label rows.
    pub fn remap_period(&self) -> f64 {
        self.lx / self.ly
    }

    pub fn padded(&self) -> (usize, usize) {
        (self.nx * self.dealias_pad, self.ny * self.dealias_pad)
    }

    pub fn x(&self, a: usize) -> f64 {
        -self.lx + 2.0 * self.lx * a as f64 / self.nx as f64
    }

    pub fn y(&self, b: usize) -> f64 {
        -self.ly + 2.0 * self.ly * b as f64 / self.ny as f64
    }
}

#[inline]
pub(crate) fn signed_mode(a: usize, n: usize) -> i64 {
    if a < n / 2 {
        a as i64
    } else {
        a as i64 - n as i64
    }
}

/// Storage slot of signed mode `j` on an `n`-point axis, excluding Nyquist.
#[inline]
pub(crate) fn storage_index(j: i64, n: usize) -> Option<usize> {
    let half = (n / 2) as i64;
    if j <= -half || j >= half {
        None
    } else if j >= 0 {
        Some(j as usize)
    } else {
        Some((j + n as i64) as usize)
    }
}
