use std::fmt;

use serde::{Deserialize, Serialize};

use super::state::FlowState;
use crate::spectral::{deriv_x, deriv_y_phys, SpectralField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Healthy,
    Warning,
    BlownUp,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Healthy => "healthy",
            Verdict::Warning => "warning",
            Verdict::BlownUp => "blown_up",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `sup |grad n|` sampled on the padded grid, or NaN if any sample is non-finite.
pub fn sup_grad_n(d: &[SpectralField; 3]) -> f64 {
    let gx: Vec<Vec<f64>> = d.iter().map(|c| deriv_x(c).to_padded_values()).collect();
    let gy: Vec<Vec<f64>> = d.iter().map(|c| deriv_y_phys(c).to_padded_values()).collect();
    let mut sup = 0.0f64;
    for p in 0..gx[0].len() {
        let g2: f64 = (0..3).map(|c| gx[c][p] * gx[c][p] + gy[c][p] * gy[c][p]).sum();
        if !g2.is_finite() {
            return f64::NAN;
        }
        sup = sup.max(g2.sqrt());
    }
    sup
}

/// Classifies a run by growth of `sup |grad n|` relative to its initial value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowUpMonitor {
    pub initial: f64,
    /// Growth factor that counts as blow-up (default 1e3).
    pub threshold: f64,
    /// Growth factor that raises a warning (default 10).
    pub warn: f64,
}

impl BlowUpMonitor {
    pub const DEFAULT_THRESHOLD: f64 = 1e3;
    pub const DEFAULT_WARN: f64 = 10.0;

    pub fn new(initial: f64) -> Self {
        Self::with_threshold(initial, Self::DEFAULT_THRESHOLD)
    }

    pub fn with_threshold(initial: f64, threshold: f64) -> Self {
        Self {
            initial,
            threshold,
            warn: Self::DEFAULT_WARN,
        }
    }

    pub fn for_state(state: &FlowState, threshold: f64) -> Self {
        Self::with_threshold(sup_grad_n(&state.d), threshold)
    }

    pub fn classify(&self, sup_grad: f64, non_finite: bool) -> Verdict {
        if non_finite || !sup_grad.is_finite() {
            return Verdict::BlownUp;
        }
        // an identically flat start never triggers on rounding noise
        let base = self.initial.max(f64::MIN_POSITIVE);
        if sup_grad > self.threshold * base && sup_grad > 0.0 {
            Verdict::BlownUp
        } else if sup_grad > self.warn * base {
            Verdict::Warning
        } else {
            Verdict::Healthy
        }
    }

    pub fn check(&self, state: &FlowState) -> Verdict {
        self.classify(sup_grad_n(&state.d), state.has_non_finite())
    }
}

/// One-shot verdict for a state against its own initial gradient level.
pub fn blow_up_monitor(state: &FlowState, monitor: &BlowUpMonitor) -> Verdict {
    monitor.check(state)
}
