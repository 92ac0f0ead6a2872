//! Linear verification: solver against exact Kelvin modes, enhanced
//! dissipation exponent fit, inviscid damping slope.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{step, FlowState, PhysParams, StepOptions};
use crate::linear::{
    decay_time, enhanced_dissipation_check, inviscid_damping_check, kelvin_decay_from_initial, kelvin_exact,
    DecayCase, EnhancedDissipationFit, KelvinMode,
};
use crate::spectral::{Grid, SpectralField};

pub const ED_KS: [f64; 4] = [1.0, 2.0, 4.0, 8.0];
pub const ED_NUS: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// Decay depth (e-folds) at which the decay time is measured.
pub const ED_DEPTH: f64 = 10.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KelvinTraceRow {
    pub t: f64,
    pub j: i64,
    pub k: f64,
    pub eta: f64,
    pub re_solver: f64,
    pub im_solver: f64,
    pub re_exact: f64,
    pub im_exact: f64,
    pub abs_exact: f64,
    pub rel_err: f64,
}

#[derive(Clone, Debug)]
pub struct KelvinComparison {
    pub worst_rel_err: f64,
    pub rows: Vec<KelvinTraceRow>,
    pub wall_seconds: f64,
}

/// Storage label holding the mode that started at `(j, eta)`, at time `t`
/// with frame offset `s`.
fn current_label(g: &Grid, s: f64, j: i64, eta: f64, t: f64) -> i64 {
    let k = j as f64 * g.dk();
    ((eta - k * t - k * s) / g.dxi()).round() as i64
}

/// Step the linear vorticity equation (`A = 1`, viscosity `nu`) from a sum of
/// real modes `(j, i, c)` and compare each mode to its exact solution every
/// `sample_every` steps.
pub fn kelvin_solver_comparison(
    grid: Grid,
    modes: &[(i64, i64, Complex64)],
    nu: f64,
    dt: f64,
    t_end: f64,
    sample_every: u64,
) -> Result<KelvinComparison> {
    let started = Instant::now();
    let params = PhysParams {
        amplitude: 1.0,
        nu,
        lam: 1.0,
        gam: 1.0,
    };
    let mut st = FlowState::zeros(grid);
    for &(j, i, c) in modes {
        st.omega += &SpectralField::real_mode(grid, j, i, c, 0.0)?;
    }
    let n_steps = (t_end / dt).round() as u64;
    let opts = StepOptions::linear();
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for n in 1..=n_steps {
        st = step(&st, &params, dt, &opts)?.0;
        if n % sample_every.max(1) != 0 && n != n_steps {
            continue;
        }
        for &(j, i, c) in modes {
            let k = j as f64 * grid.dk();
            let eta = i as f64 * grid.dxi();
            let label = current_label(&grid, st.shear_time(), j, eta, st.t);
            let got = st.omega.get(j, label);
            let mode = KelvinMode {
                k,
                xi0: eta - k * st.t,
                amplitude: c,
                nu,
            };
            let want = kelvin_exact(&mode, st.t);
            let rel = (got - want).norm() / want.norm();
            worst = worst.max(rel);
            rows.push(KelvinTraceRow {
                t: st.t,
                j,
                k,
                eta,
                re_solver: got.re,
                im_solver: got.im,
                re_exact: want.re,
                im_exact: want.im,
                abs_exact: want.norm(),
                rel_err: rel,
            });
        }
    }
    Ok(KelvinComparison {
        worst_rel_err: worst,
        rows,
        wall_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Modes used by the standard comparison on a `64 x 64` grid over `[0, 10]`.
pub fn standard_kelvin_modes() -> Vec<(i64, i64, Complex64)> {
    vec![
        (1, 5, Complex64::new(1.0, 0.5)),
        (2, 3, Complex64::new(-0.3, 0.2)),
        (3, 10, Complex64::new(0.0, 0.7)),
        (0, 4, Complex64::new(0.4, 0.0)),
    ]
}

pub fn standard_kelvin_comparison() -> Result<KelvinComparison> {
    let grid = Grid::square(64, std::f64::consts::PI)?;
    kelvin_solver_comparison(grid, &standard_kelvin_modes(), 1e-3, 0.02, 10.0, 25)
}

pub fn enhanced_dissipation_cases() -> Vec<DecayCase> {
    ED_KS
        .iter()
        .flat_map(|&k| ED_NUS.iter().map(move |&nu| DecayCase { k, xi_initial: 0.0, nu }))
        .collect()
}

/// Inviscid stream-function slope for `k = 1` over `t in [10, 100]`.
pub fn standard_inviscid_slope() -> Result<f64> {
    let case = DecayCase {
        k: 1.0,
        xi_initial: 0.0,
        nu: 0.0,
    };
    let ts: Vec<f64> = (0..=90).map(|i| 10.0 + i as f64).collect();
    inviscid_damping_check(&case, &ts)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitCheck {
    pub quantity: String,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub pass: bool,
}

impl FitCheck {
    fn new(quantity: &str, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            quantity: quantity.into(),
            value,
            lo,
            hi,
            pass: (lo..=hi).contains(&value),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LinearVerifyReport {
    pub fit: EnhancedDissipationFit,
    pub inviscid_slope: f64,
    pub kelvin: KelvinComparison,
    pub checks: Vec<FitCheck>,
    pub files: Vec<PathBuf>,
}

impl LinearVerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Serialize)]
struct EdRow {
    k: f64,
    nu: f64,
    xi_initial: f64,
    decay_time: f64,
    rate: f64,
    residual: f64,
}

#[derive(Serialize)]
struct DecayCurveRow {
    k: f64,
    nu: f64,
    t: f64,
    amplitude: f64,
}

fn write_csv<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Run the three linear checks and write `ed_fit.csv`, `fit_report.csv`,
/// `kelvin_trace.csv` and `decay_curves.csv` into `out_dir`.
pub fn linear_verify(out_dir: &Path) -> Result<LinearVerifyReport> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let cases = enhanced_dissipation_cases();
    let fit = enhanced_dissipation_check(&cases, ED_DEPTH)?;
    let slope = standard_inviscid_slope()?;
    let kelvin = standard_kelvin_comparison()?;
    let checks = vec![
        FitCheck::new("k_exponent", fit.k_exponent, 0.63, 0.70),
        FitCheck::new("nu_exponent", fit.nu_exponent, 0.30, 0.37),
        FitCheck::new("inviscid_slope", slope, -2.1, -1.9),
        FitCheck::new("kelvin_max_rel_err", kelvin.worst_rel_err, 0.0, 1e-10),
    ];

    let ed_path = out_dir.join("ed_fit.csv");
    write_csv(
        &ed_path,
        fit.samples.iter().zip(&fit.residuals).map(|(s, r)| EdRow {
            k: s.case.k,
            nu: s.case.nu,
            xi_initial: s.case.xi_initial,
            decay_time: s.decay_time,
            rate: s.rate,
            residual: *r,
        }),
    )?;
    let report_path = out_dir.join("fit_report.csv");
    write_csv(&report_path, &checks)?;
    let trace_path = out_dir.join("kelvin_trace.csv");
    write_csv(&trace_path, &kelvin.rows)?;
    let curves_path = out_dir.join("decay_curves.csv");
    let mut curves = Vec::new();
    for c in &cases {
        let horizon = decay_time(c, ED_DEPTH)?;
        for i in 0..=64 {
            let t = horizon * i as f64 / 64.0;
            curves.push(DecayCurveRow {
                k: c.k,
                nu: c.nu,
                t,
                amplitude: kelvin_decay_from_initial(c.k, c.xi_initial, c.nu, t),
            });
        }
    }
    write_csv(&curves_path, curves)?;
    Ok(LinearVerifyReport {
        fit,
        inviscid_slope: slope,
        kelvin,
        checks,
        files: vec![ed_path, report_path, trace_path, curves_path],
    })
}
