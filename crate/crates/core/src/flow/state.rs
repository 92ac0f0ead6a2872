use crate::error::{Error, Result};
use crate::spectral::{Grid, SpectralField};

/// Vorticity and director perturbation on a shared sheared frame.
///
/// `d = n - e1`; the director is `n = d + e1` with `|n| = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowState {
    pub omega: SpectralField,
    pub d: [SpectralField; 3],
    /// Rescaled time.
    pub t: f64,
}

impl FlowState {
    pub fn zeros(grid: Grid) -> Self {
        let z = SpectralField::zeros(grid, 0.0);
        Self {
            omega: z.clone(),
            d: [z.clone(), z.clone(), z],
            t: 0.0,
        }
    }

    pub fn new(omega: SpectralField, d: [SpectralField; 3], t: f64) -> Result<Self> {
        for c in &d {
            omega.check_compatible(c)?;
        }
        if !t.is_finite() {
            return Err(Error::InvalidParam(format!("t = {t}")));
        }
        Ok(Self { omega, d, t })
    }

    pub fn grid(&self) -> &Grid {
        self.omega.grid()
    }

    pub fn shear_time(&self) -> f64 {
        self.omega.shear_time()
    }

    pub fn fields(&self) -> impl Iterator<Item = &SpectralField> {
        std::iter::once(&self.omega).chain(self.d.iter())
    }

    pub fn has_non_finite(&self) -> bool {
        self.fields().any(|f| f.has_non_finite())
    }

    /// Sum of squared continuum L2 norms of all four fields.
    pub fn total_energy(&self) -> f64 {
        self.fields().map(|f| f.l2_norm().powi(2)).sum()
    }
}
