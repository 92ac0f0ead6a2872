use super::field::SpectralField;
use crate::error::{Error, Result};

/// Pointwise product of `degree` band-limited fields, evaluated on the padded
/// grid and truncated back to the resolved band.
///
/// With `dealias_pad >= 2` the result equals the truncated spectral
/// convolution exactly for quadratic and cubic products.
pub fn multiply_dealiased(fs: &[&SpectralField], degree: usize) -> Result<SpectralField> {
    if !(degree == 2 || degree == 3) || fs.len() != degree {
        return Err(Error::InvalidParam(format!(
            "dealiased product needs degree 2 or 3 with matching operand count (degree {degree}, {} operands)",
            fs.len()
        )));
    }
    let first = fs[0];
    for f in &fs[1..] {
        first.check_compatible(f)?;
    }
    let mut acc = first.to_padded_complex();
    for f in &fs[1..] {
        for (a, b) in acc.iter_mut().zip(f.to_padded_complex()) {
            *a *= b;
        }
    }
    Ok(SpectralField::from_padded_complex(*first.grid(), acc, first.shear_time()))
}
