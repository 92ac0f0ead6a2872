//! Frequency-region split of a convolution `(k, l)` with explicit constants.
//!
//! * res: `|k-l|/2 <= |k| <= 2|k-l|`
//! * HL:  `|k| > 2|k-l|`
//! * LH:  `2|k| < |k-l|`

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Res,
    HighLow,
    LowHigh,
}

pub fn region_classify(k: f64, l: f64) -> Region {
    let (ak, akl) = (k.abs(), (k - l).abs());
    if ak > 2.0 * akl {
        Region::HighLow
    } else if 2.0 * ak < akl {
        Region::LowHigh
    } else {
        Region::Res
    }
}

/// Exponents for the checks; all must be nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionExponents {
    pub s: f64,
    pub s1: f64,
    pub s2: f64,
}

fn bracket(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

fn inv_bracket(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::InvalidParam("<1/x> at x = 0".into()));
    }
    Ok(bracket(1.0 / x))
}

/// Relative slack so boundary ties do not fail on round-off.
const SLACK: f64 = 1.0 + 1e-12;

/// Check every explicit-constant inequality of the region containing `(k, l)`.
///
/// * res: `|l| <= 3|k|`, `|k| <= 2|k-l| <= 4|k|`,
///   `<k>^s1 <1/k>^s2 <= 2^(s1+s2) <k-l>^s1 <1/(k-l)>^s2`
/// * HL: `|k-l| <= |k|/2`, `|k|/2 <= |l| <= 3|k|/2`,
///   `<k>^s1 <1/k>^s2 <= 2^(s1+s2) <l>^s1 <1/l>^s2`
/// * LH: `|k| <= |k-l|/2`, `|k-l|/2 <= |l| <= 3|k-l|/2`,
///   `<k>^2s <= 3^2s <l>^s <k-l>^s`
pub fn region_inequality_check(k: f64, l: f64, e: RegionExponents) -> Result<bool> {
    if e.s < 0.0 || e.s1 < 0.0 || e.s2 < 0.0 {
        return Err(Error::InvalidParam(format!("negative exponent in {e:?}")));
    }
    let (ak, al, akl) = (k.abs(), l.abs(), (k - l).abs());
    let le = |a: f64, b: f64| a <= b * SLACK;
    let ok = match region_classify(k, l) {
        Region::Res => {
            let weight = |x: f64| -> Result<f64> { Ok(bracket(x).powf(e.s1) * inv_bracket(x)?.powf(e.s2)) };
            le(al, 3.0 * ak)
                && le(ak, 2.0 * akl)
                && le(akl, 2.0 * ak)
                && le(weight(k)?, 2f64.powf(e.s1 + e.s2) * weight(k - l)?)
        }
        Region::HighLow => {
            let weight = |x: f64| -> Result<f64> { Ok(bracket(x).powf(e.s1) * inv_bracket(x)?.powf(e.s2)) };
            le(akl, 0.5 * ak)
                && le(0.5 * ak, al)
                && le(al, 1.5 * ak)
                && le(weight(k)?, 2f64.powf(e.s1 + e.s2) * weight(l)?)
        }
        Region::LowHigh => {
            le(ak, 0.5 * akl)
                && le(0.5 * akl, al)
                && le(al, 1.5 * akl)
                && le(
                    bracket(k).powf(2.0 * e.s),
                    3f64.powf(2.0 * e.s) * bracket(l).powf(e.s) * bracket(k - l).powf(e.s),
                )
        }
    };
    Ok(ok)
}
