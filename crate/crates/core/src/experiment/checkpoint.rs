//! Binary checkpoints.
//!
//! Layout, all little-endian: magic `LCSM`, version `u32`, `nx`, `ny` (`u32`),
//! `t`, `shear_time` (`f64`), then the coefficient arrays of `w, d1, d2, d3`
//! as interleaved `(re, im)` `f64` pairs, row-major over `(k index, xi index)`.

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::flow::FlowState;
use crate::spectral::{Grid, SpectralField};

pub const CHECKPOINT_MAGIC: [u8; 4] = *b"LCSM";
pub const CHECKPOINT_VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 3 * 4 + 2 * 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckpointHeader {
    pub version: u32,
    pub nx: u32,
    pub ny: u32,
    pub t: f64,
    pub shear_time: f64,
}

pub fn encode_checkpoint(state: &FlowState) -> Vec<u8> {
    let g = state.grid();
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * g.len() * 16);
    out.extend_from_slice(&CHECKPOINT_MAGIC);
    out.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
    out.extend_from_slice(&(g.nx as u32).to_le_bytes());
    out.extend_from_slice(&(g.ny as u32).to_le_bytes());
    out.extend_from_slice(&state.t.to_le_bytes());
    out.extend_from_slice(&state.shear_time().to_le_bytes());
    for f in state.fields() {
        for c in f.coeffs() {
            out.extend_from_slice(&c.re.to_le_bytes());
            out.extend_from_slice(&c.im.to_le_bytes());
        }
    }
    out
}

fn f64_at(bytes: &[u8], pos: usize) -> f64 {
    f64::from_le_bytes(bytes[pos..pos + 8].try_into().expect("8 bytes"))
}

fn u32_at(bytes: &[u8], pos: usize) -> u32 {
    u32::from_le_bytes(bytes[pos..pos + 4].try_into().expect("4 bytes"))
}

pub fn decode_header(bytes: &[u8]) -> Result<CheckpointHeader> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::CheckpointFormat(format!("truncated header ({} bytes)", bytes.len())));
    }
    if bytes[..4] != CHECKPOINT_MAGIC {
        return Err(Error::CheckpointFormat(format!("bad magic {:?}", &bytes[..4])));
    }
    let version = u32_at(bytes, 4);
    if version != CHECKPOINT_VERSION {
        return Err(Error::CheckpointFormat(format!(
            "unsupported version {version} (expected {CHECKPOINT_VERSION})"
        )));
    }
    Ok(CheckpointHeader {
        version,
        nx: u32_at(bytes, 8),
        ny: u32_at(bytes, 12),
        t: f64_at(bytes, 16),
        shear_time: f64_at(bytes, 24),
    })
}

/// Decode onto `grid`, whose resolution must match the header.
pub fn decode_checkpoint(bytes: &[u8], grid: &Grid) -> Result<FlowState> {
    let h = decode_header(bytes)?;
    if h.nx as usize != grid.nx || h.ny as usize != grid.ny {
        return Err(Error::CheckpointFormat(format!(
            "checkpoint is {}x{}, grid is {}x{}",
            h.nx, h.ny, grid.nx, grid.ny
        )));
    }
    let n = grid.len();
    let expected = HEADER_LEN + 4 * n * 16;
    if bytes.len() != expected {
        return Err(Error::CheckpointFormat(format!(
            "payload is {} bytes, expected {expected}",
            bytes.len()
        )));
    }
    let mut fields = (0..4).map(|f| {
        let base = HEADER_LEN + f * n * 16;
        let coeffs = (0..n)
            .map(|p| Complex64::new(f64_at(bytes, base + 16 * p), f64_at(bytes, base + 16 * p + 8)))
            .collect();
        SpectralField::from_coeffs(*grid, coeffs, h.shear_time)
    });
    let omega = fields.next().expect("four fields")?;
    let d = [
        fields.next().expect("four fields")?,
        fields.next().expect("four fields")?,
        fields.next().expect("four fields")?,
    ];
    FlowState::new(omega, d, h.t)
}

/// Write via a temporary sibling and rename, so a crash never leaves a torn file.
pub fn save_checkpoint(state: &FlowState, path: &Path) -> Result<()> {
    let tmp = path.with_extension("lcsm.tmp");
    std::fs::write(&tmp, encode_checkpoint(state)).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn load_checkpoint(path: &Path, grid: &Grid) -> Result<FlowState> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_checkpoint(&bytes, grid)
}

pub fn read_checkpoint_header(path: &Path) -> Result<CheckpointHeader> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_header(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn sample_state() -> FlowState {
        let g = Grid::new(8, 16, PI, 2.0 * PI, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = -0.37;
        let mut f = || SpectralField::random_real(g, &mut rng, 3, 7, 0.1, s);
        FlowState::new(f(), [f(), f(), f()], 1.25).unwrap()
    }

    #[test]
    fn round_trip_is_bitwise() {
        let st = sample_state();
        let bytes = encode_checkpoint(&st);
        assert_eq!(bytes.len(), HEADER_LEN + 4 * 8 * 16 * 16);
        let back = decode_checkpoint(&bytes, st.grid()).unwrap();
        assert_eq!(back.t.to_bits(), st.t.to_bits());
        assert_eq!(back.shear_time().to_bits(), st.shear_time().to_bits());
        for (a, b) in back.fields().zip(st.fields()) {
            for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
                assert_eq!(x.re.to_bits(), y.re.to_bits());
                assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }

    #[test]
    fn header_layout() {
        let st = sample_state();
        let bytes = encode_checkpoint(&st);
        assert_eq!(&bytes[..4], b"LCSM");
        assert_eq!(u32_at(&bytes, 4), 1);
        assert_eq!(u32_at(&bytes, 8), 8);
        assert_eq!(u32_at(&bytes, 12), 16);
        assert_eq!(f64_at(&bytes, 16), 1.25);
        // first omega coefficient follows the header as (re, im)
        assert_eq!(f64_at(&bytes, HEADER_LEN), st.omega.coeffs()[0].re);
        assert_eq!(f64_at(&bytes, HEADER_LEN + 8), st.omega.coeffs()[0].im);
    }

    #[test]
    fn corrupt_inputs_are_format_errors() {
        let st = sample_state();
        let mut bytes = encode_checkpoint(&st);
        let g = *st.grid();
        assert!(matches!(decode_checkpoint(&bytes[..bytes.len() - 1], &g), Err(Error::CheckpointFormat(_))));
        assert!(matches!(decode_checkpoint(&bytes[..10], &g), Err(Error::CheckpointFormat(_))));
        let other = Grid::new(16, 16, PI, PI, 2).unwrap();
        assert!(matches!(decode_checkpoint(&bytes, &other), Err(Error::CheckpointFormat(_))));
        bytes[4] = 9;
        assert!(matches!(decode_checkpoint(&bytes, &g), Err(Error::CheckpointFormat(_))));
        bytes[0] = b'X';
        assert!(matches!(decode_checkpoint(&bytes, &g), Err(Error::CheckpointFormat(_))));
    }
}
