use crate::error::{Error, Result};
use crate::spectral::{to_physical, to_spectral, PhysicalField, SpectralField};

/// Outcome of projecting the director back onto the unit sphere.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RenormReport {
    /// `max | |n| - 1 |` before projection.
    pub max_defect: f64,
    pub min_norm: f64,
    /// Largest pointwise change `|n' - n|`.
    pub max_correction: f64,
}

/// `n' = (d + e1)/|d + e1|` at every collocation point; returns `d' = n' - e1`.
pub fn renormalize_director(d: &[SpectralField; 3]) -> Result<([SpectralField; 3], RenormReport)> {
    let s = d[0].shear_time();
    let mut phys: Vec<PhysicalField> = d.iter().map(to_physical).collect();
    let mut report = RenormReport {
        min_norm: f64::INFINITY,
        ..Default::default()
    };
    let npts = phys[0].values().len();
    for p in 0..npts {
        let n = [
            phys[0].values()[p] + 1.0,
            phys[1].values()[p],
            phys[2].values()[p],
        ];
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        report.min_norm = report.min_norm.min(len);
        if !(len > 1e-12) {
            return Err(Error::DegenerateDirector { min_norm: len });
        }
        report.max_defect = report.max_defect.max((len - 1.0).abs());
        report.max_correction = report.max_correction.max((len - 1.0).abs());
        for c in 0..3 {
            let unit = n[c] / len;
            phys[c].values_mut()[p] = if c == 0 { unit - 1.0 } else { unit };
        }
    }
    let out = [
        to_spectral(&phys[0], s),
        to_spectral(&phys[1], s),
        to_spectral(&phys[2], s),
    ];
    Ok((out, report))
}

/// `max | |d + e1| - 1 |` over collocation points.
pub fn sphere_defect(d: &[SpectralField; 3]) -> f64 {
    let phys: Vec<PhysicalField> = d.iter().map(to_physical).collect();
    (0..phys[0].values().len())
        .map(|p| {
            let n0 = phys[0].values()[p] + 1.0;
            let n1 = phys[1].values()[p];
            let n2 = phys[2].values()[p];
            ((n0 * n0 + n1 * n1 + n2 * n2).sqrt() - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// `min |d + e1|` over collocation points.
pub fn min_director_length(d: &[SpectralField; 3]) -> f64 {
    let phys: Vec<PhysicalField> = d.iter().map(to_physical).collect();
    (0..phys[0].values().len())
        .map(|p| {
            let n0 = phys[0].values()[p] + 1.0;
            let n1 = phys[1].values()[p];
            let n2 = phys[2].values()[p];
            (n0 * n0 + n1 * n1 + n2 * n2).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}
