//! Amplitude / scale sweeps: one independent run per `(A, lambda)` cell.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{InitKind, SimConfig};
use super::run::run_simulation;
use crate::error::{Error, Result};

pub const PHASE_TABLE_FILE: &str = "phase_table.csv";
const CELL_ROW_FILE: &str = "phase_row.csv";

/// One row of the phase table. `verdict` is `error` for cells that failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseRow {
    pub cell: usize,
    #[serde(rename = "A")]
    pub amplitude: f64,
    pub lambda: f64,
    pub verdict: String,
    pub termination: String,
    pub peak_grad_n: f64,
    #[serde(rename = "peak_E")]
    pub peak_energy: f64,
    #[serde(rename = "final_E")]
    pub final_energy: f64,
    pub t_of_peak: f64,
    pub t_of_peak_original: f64,
    pub bootstrap_ok: bool,
    pub error: String,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub table: PathBuf,
    pub rows: Vec<PhaseRow>,
}

fn run_cell(base: &SimConfig, cell: usize, amplitude: f64, lambda: Option<f64>, dir: &Path) -> PhaseRow {
    let mut cfg = base.clone();
    cfg.phys.amplitude = amplitude;
    if let Some(l) = lambda {
        cfg.init.lambda = Some(l);
    }
    let mut row = PhaseRow {
        cell,
        amplitude,
        lambda: cfg.init.lambda.unwrap_or(f64::NAN),
        verdict: "error".into(),
        termination: String::new(),
        peak_grad_n: f64::NAN,
        peak_energy: f64::NAN,
        final_energy: f64::NAN,
        t_of_peak: f64::NAN,
        t_of_peak_original: f64::NAN,
        bootstrap_ok: false,
        error: String::new(),
    };
    match run_simulation(&cfg, dir) {
        Ok(out) => {
            let s = out.summary;
            row.verdict = s.verdict.to_string();
            row.termination = serde_json::to_value(s.termination)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default();
            row.peak_grad_n = s.peak_grad_n;
            row.peak_energy = s.peak_energy;
            row.final_energy = s.final_energy.map_or(f64::NAN, |e| e.total);
            row.t_of_peak = s.t_of_peak;
            row.t_of_peak_original = s.t_of_peak_original;
            row.bootstrap_ok = s.bootstrap_ok;
        }
        Err(e) => row.error = e.to_string(),
    }
    row
}

fn write_rows(path: &Path, rows: &[PhaseRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_phase_table(path: &Path) -> Result<Vec<PhaseRow>> {
    let mut rdr = csv::Reader::from_path(path)?;
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Run every `(A, lambda)` cell on a pool of `jobs` threads. An empty
/// `lambdas` keeps the configured `init.lambda`. Each cell writes its own
/// run directory and one-row CSV; the rows are merged into
/// `phase_table.csv` in cell order once all cells are done.
pub fn sweep_amplitude(
    config: &SimConfig,
    amplitudes: &[f64],
    lambdas: &[f64],
    jobs: usize,
    out_dir: &Path,
) -> Result<SweepOutcome> {
    if amplitudes.is_empty() {
        return Err(Error::Config("sweep needs at least one amplitude".into()));
    }
    if let Some(a) = amplitudes.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
        return Err(Error::Config(format!("amplitude {a} must be positive")));
    }
    if !lambdas.is_empty() && config.init.kind != InitKind::DirectorFamily {
        return Err(Error::Config("--lambdas needs init.kind = director_family".into()));
    }
    if jobs == 0 {
        return Err(Error::Config("--jobs must be at least 1".into()));
    }
    let lam_list: Vec<Option<f64>> = if lambdas.is_empty() {
        vec![None]
    } else {
        lambdas.iter().copied().map(Some).collect()
    };
    let cells: Vec<(usize, f64, Option<f64>)> = lam_list
        .iter()
        .flat_map(|&l| amplitudes.iter().map(move |&a| (a, l)))
        .enumerate()
        .map(|(i, (a, l))| (i, a, l))
        .collect();
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let cell_dirs: Vec<PathBuf> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(i, a, l)| -> Result<PathBuf> {
                let dir = out_dir.join(format!("cell_{i:03}"));
                let row = run_cell(config, i, a, l, &dir);
                std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
                write_rows(&dir.join(CELL_ROW_FILE), &[row])?;
                Ok(dir)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut rows = Vec::with_capacity(cells.len());
    for dir in &cell_dirs {
        rows.extend(read_phase_table(&dir.join(CELL_ROW_FILE))?);
    }
    let table = out_dir.join(PHASE_TABLE_FILE);
    write_rows(&table, &rows)?;
    Ok(SweepOutcome { table, rows })
}
