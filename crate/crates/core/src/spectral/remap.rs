use num_complex::Complex64;

use super::field::SpectralField;
use crate::error::{Error, Result};

/// Relabel `f` so that the same physical field is expressed at frame offset
/// `new_shear_time`. Returns the relabelled field and the continuum L2
/// energy of modes pushed outside the resolved band.
pub fn remap_shear_frame(f: &SpectralField, new_shear_time: f64) -> Result<(SpectralField, f64)> {
    let g = *f.grid();
    // label xi' = xi + k (s - s'); column j moves by j * m rows
    let m = (f.shear_time() - new_shear_time) * g.dk() / g.dxi();
    let shift = m.round();
    if (m - shift).abs() > 1e-9 * m.abs().max(1.0) {
        return Err(Error::NonIntegerShift { shift: m });
    }
    let shift = shift as i64;
    let mut out = SpectralField::zeros(g, new_shear_time);
    let mut lost = 0.0;
    for a in 0..g.nx {
        let j = g.mode_x(a);
        for b in 0..g.ny {
            let c = f.coeffs()[g.index(a, b)];
            if c == Complex64::default() {
                continue;
            }
            match g.storage(j, g.mode_y(b) + j * shift) {
                Some((na, nb)) if !g.is_nyquist(a, b) => out.coeffs_mut()[g.index(na, nb)] = c,
                _ => lost += c.norm_sqr(),
            }
        }
    }
    Ok((out, lost * g.area()))
}
