//! Cached complex FFT plans and 2D transforms over row-major buffers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

type PlanMap = HashMap<(usize, bool), Arc<dyn Fft<f64>>>;

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<PlanMap>> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = plans.lock().expect("fft plan cache poisoned");
    guard
        .entry((n, inverse))
        .or_insert_with(|| {
            let direction = if inverse {
                FftDirection::Inverse
            } else {
                FftDirection::Forward
            };
            FftPlanner::new().plan_fft(n, direction)
        })
        .clone()
}

/// Unnormalized 2D FFT of an `n1 x n2` row-major buffer, in place.
pub(crate) fn fft2(buf: &mut [Complex64], n1: usize, n2: usize, inverse: bool) {
    debug_assert_eq!(buf.len(), n1 * n2);
    let rows = plan(n2, inverse);
    let cols = plan(n1, inverse);
    let mut scratch = vec![Complex64::default(); rows.get_inplace_scratch_len().max(cols.get_inplace_scratch_len())];
    rows.process_with_scratch(buf, &mut scratch);

    let mut t = vec![Complex64::default(); n1 * n2];
    transpose(buf, &mut t, n1, n2);
    cols.process_with_scratch(&mut t, &mut scratch);
    transpose(&t, buf, n2, n1);
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], n1: usize, n2: usize) {
    const BLOCK: usize = 32;
    for a0 in (0..n1).step_by(BLOCK) {
        for b0 in (0..n2).step_by(BLOCK) {
            for a in a0..(a0 + BLOCK).min(n1) {
                for b in b0..(b0 + BLOCK).min(n2) {
                    dst[b * n1 + a] = src[a * n2 + b];
                }
            }
        }
    }
}
