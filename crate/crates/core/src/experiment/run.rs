//! Single runs: integrate, sample diagnostics, checkpoint, summarize.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::checkpoint::{load_checkpoint, read_checkpoint_header, save_checkpoint};
use super::config::{InitKind, SimConfig};
use super::diagnostics::{DiagnosticsRow, DiagnosticsWriter, PointDiagnostics};
use crate::error::{Error, Result};
use crate::flow::{min_director_length, step, sup_grad_n, BlowUpMonitor, FlowState, PhysParams, StepOptions, Verdict};
use crate::initial_data::{make_director_data, make_director_state, norms_report, DataReport};
use crate::norms::{bootstrap_constant, energy_functional, EnergyAccumulators, EnergyBreakdown, YNorms};
use crate::spectral::{Grid, SpectralField};

pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const CONFIG_FILE: &str = "config.toml";
pub const CHECKPOINT_DIR: &str = "checkpoints";

/// Why the time loop stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Completed,
    BlowUp,
    NonFinite,
    CflViolation,
    RemapLoss,
    DegenerateDirector,
}

/// Everything besides the fields needed to continue a run bit-for-bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunProgress {
    pub step: u64,
    /// Time of the initial state.
    pub t0: f64,
    pub diag_rows: u64,
    pub accs: EnergyAccumulators,
    pub monitor: BlowUpMonitor,
    /// `K` from the initial state.
    pub k_boot: f64,
    pub peak_grad_n: f64,
    pub t_of_peak: f64,
    pub peak_energy: f64,
    pub bootstrap_ok: bool,
    pub first_bootstrap_violation: Option<f64>,
    /// Verdict at the latest diagnostic sample.
    pub verdict: Verdict,
    pub worst_verdict: Verdict,
    pub max_sphere_defect: f64,
    pub max_div_u: f64,
    /// Summed fraction of energy dropped by frame remaps.
    pub remap_loss: f64,
    pub remaps: u64,
}

/// JSON written next to every binary checkpoint.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckpointSidecar {
    pub config: SimConfig,
    pub progress: RunProgress,
    pub data_report: Option<DataReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunSummary {
    pub verdict: Verdict,
    pub worst_verdict: Verdict,
    pub termination: Termination,
    pub message: Option<String>,
    #[serde(rename = "A")]
    pub amplitude: f64,
    pub steps: u64,
    /// Rescaled time reached.
    pub t_final: f64,
    /// Same instant in the original time variable `t / A`.
    pub t_final_original: f64,
    pub t_end: f64,
    pub initial_grad_n: f64,
    pub peak_grad_n: f64,
    pub t_of_peak: f64,
    pub t_of_peak_original: f64,
    pub final_energy: Option<EnergyBreakdown>,
    pub peak_energy: f64,
    #[serde(rename = "K")]
    pub k_boot: f64,
    pub c_cal: f64,
    /// `E(t) <= 2K` at every diagnostic sample.
    pub bootstrap_ok: bool,
    pub first_bootstrap_violation: Option<f64>,
    pub max_sphere_defect: f64,
    pub max_div_u: f64,
    pub remap_loss: f64,
    pub remaps: u64,
    pub diag_rows: u64,
    pub final_checkpoint: Option<PathBuf>,
    pub data_report: Option<DataReport>,
    pub wall_seconds: f64,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub summary: RunSummary,
}

/// Initial state for `config`, plus the data report for family data.
pub fn initial_state(config: &SimConfig) -> Result<(FlowState, Option<DataReport>)> {
    let grid = config.grid.to_grid()?;
    let (mut state, report) = match config.init.kind {
        InitKind::DirectorFamily => {
            let p = config.init.family_params()?;
            p.validate(&config.norms)?;
            let literal = make_director_data(&p, &grid)?;
            let report = norms_report(&literal, None, &config.norms, config.run.c_cal);
            let d = make_director_state(&p, &grid)?;
            (FlowState::new(SpectralField::zeros(grid, 0.0), d, 0.0)?, Some(report))
        }
        InitKind::File => {
            let path = config.init.file.as_deref().ok_or_else(|| Error::Config("init.file missing".into()))?;
            (load_checkpoint(path, &grid)?, None)
        }
        InitKind::SingleMode => {
            let (j, i, amp) = match (config.init.k_index, config.init.xi_index, config.init.amplitude) {
                (Some(j), Some(i), Some(a)) => (j, i, a),
                _ => return Err(Error::Config("single_mode needs k_index, xi_index, amplitude".into())),
            };
            let mut st = FlowState::zeros(grid);
            st.omega = SpectralField::real_mode(grid, j, i, num_complex::Complex64::new(amp, 0.0), 0.0)?;
            (st, None)
        }
    };
    if config.init.noise > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(config.run.seed);
        let s = state.shear_time();
        state.omega += &SpectralField::random_real(grid, &mut rng, 4, 4, config.init.noise, s);
    }
    Ok((state, report))
}

struct Runner {
    config: SimConfig,
    params: PhysParams,
    opts: StepOptions,
    dir: PathBuf,
    state: FlowState,
    progress: RunProgress,
    writer: DiagnosticsWriter,
    data_report: Option<DataReport>,
    verdict: Verdict,
    last_energy: Option<EnergyBreakdown>,
    last_checkpoint: Option<PathBuf>,
    message: Option<String>,
}

impl Runner {
    fn amplitude(&self) -> f64 {
        self.params.amplitude
    }

    /// Sample all diagnostics at the current state and append a row.
    fn sample(&mut self, min_abs_n: f64) -> Result<()> {
        let a = self.amplitude();
        let norms = self.config.norms;
        self.progress.accs.update(&self.state, &norms, a)?;
        let energy = energy_functional(&self.progress.accs, &norms, a)?;
        let y = YNorms::of(&self.state, &norms);
        let g = sup_grad_n(&self.state.d);
        let verdict = self.progress.monitor.classify(g, self.state.has_non_finite());
        let t = self.state.t;
        let p = &mut self.progress;
        if g > p.peak_grad_n {
            p.peak_grad_n = g;
            p.t_of_peak = t;
        }
        p.peak_energy = p.peak_energy.max(energy.total);
        if !(energy.total <= 2.0 * p.k_boot) {
            p.bootstrap_ok = false;
            p.first_bootstrap_violation.get_or_insert(t);
        }
        p.worst_verdict = p.worst_verdict.max(verdict);
        p.verdict = verdict;
        let point = PointDiagnostics {
            sup_grad_n: g,
            min_abs_n,
            remap_loss: p.remap_loss,
            verdict,
        };
        let row = DiagnosticsRow::assemble(&self.state, &y, &p.accs, energy.total, point);
        p.max_div_u = p.max_div_u.max(row.max_div_u);
        self.writer.write(&row)?;
        p.diag_rows = self.writer.rows();
        self.verdict = verdict;
        self.last_energy = Some(energy);
        Ok(())
    }

    fn checkpoint(&mut self) -> Result<()> {
        let ckdir = self.dir.join(CHECKPOINT_DIR);
        std::fs::create_dir_all(&ckdir).map_err(|e| Error::io(&ckdir, e))?;
        let path = ckdir.join(format!("ckpt_{:08}.lcsm", self.progress.step));
        save_checkpoint(&self.state, &path)?;
        let sidecar = CheckpointSidecar {
            config: self.config.clone(),
            progress: self.progress.clone(),
            data_report: self.data_report.clone(),
        };
        let json_path = path.with_extension("json");
        let text = serde_json::to_string_pretty(&sidecar)?;
        std::fs::write(&json_path, text).map_err(|e| Error::io(&json_path, e))?;
        self.last_checkpoint = Some(path);
        Ok(())
    }

    fn advance(&mut self, n_total: u64) -> Result<Termination> {
        let dt = self.config.time.dt;
        let diag_every = self.config.time.diag_every;
        let ckpt_every = self.config.time.checkpoint_every;
        while self.progress.step < n_total {
            let (next, rep) = match step(&self.state, &self.params, dt, &self.opts) {
                Ok(r) => r,
                Err(e) => {
                    let term = match e {
                        Error::CflViolation { .. } => Termination::CflViolation,
                        Error::RemapLoss { .. } => Termination::RemapLoss,
                        Error::DegenerateDirector { .. } => Termination::DegenerateDirector,
                        other => return Err(other),
                    };
                    self.message = Some(e.to_string());
                    self.verdict = self.progress.monitor.classify(sup_grad_n(&self.state.d), false);
                    return Ok(term);
                }
            };
            if rep.max_grad_n > self.progress.peak_grad_n {
                self.progress.peak_grad_n = rep.max_grad_n;
                self.progress.t_of_peak = self.state.t;
            }
            if rep.non_finite {
                self.message = Some(format!("non-finite values at t = {}", self.state.t));
                self.verdict = Verdict::BlownUp;
                self.progress.worst_verdict = Verdict::BlownUp;
                return Ok(Termination::NonFinite);
            }
            self.state = next;
            self.progress.step += 1;
            let p = &mut self.progress;
            p.max_sphere_defect = p.max_sphere_defect.max(rep.sphere_defect);
            p.remap_loss += rep.remap_loss;
            p.remaps += rep.remapped as u64;
            let min_abs_n = if self.opts.flags.nonlinear {
                rep.min_abs_n
            } else {
                min_director_length(&self.state.d)
            };
            if self.progress.step % diag_every == 0 {
                self.sample(min_abs_n)?;
                if self.verdict == Verdict::BlownUp {
                    return Ok(Termination::BlowUp);
                }
            }
            if ckpt_every > 0 && self.progress.step % ckpt_every == 0 {
                self.checkpoint()?;
            }
        }
        Ok(Termination::Completed)
    }

    /// Final checkpoint, trailing off-cadence sample and summary.
    fn finish(mut self, termination: Termination, started: Instant) -> Result<RunOutcome> {
        if !self.state.has_non_finite() {
            self.checkpoint()?;
        }
        let on_cadence = self.progress.step % self.config.time.diag_every == 0;
        if !on_cadence && !self.state.has_non_finite() {
            let min_abs_n = min_director_length(&self.state.d);
            self.sample(min_abs_n)?;
        }
        if termination == Termination::NonFinite {
            self.verdict = Verdict::BlownUp;
        }
        let p = &self.progress;
        let a = self.amplitude();
        let summary = RunSummary {
            verdict: self.verdict,
            worst_verdict: p.worst_verdict.max(self.verdict),
            termination,
            message: self.message.clone(),
            amplitude: a,
            steps: p.step,
            t_final: self.state.t,
            t_final_original: self.params.original_time(self.state.t),
            t_end: self.config.time.t_end,
            initial_grad_n: p.monitor.initial,
            peak_grad_n: p.peak_grad_n,
            t_of_peak: p.t_of_peak,
            t_of_peak_original: self.params.original_time(p.t_of_peak),
            final_energy: self.last_energy,
            peak_energy: p.peak_energy,
            k_boot: p.k_boot,
            c_cal: self.config.run.c_cal,
            bootstrap_ok: p.bootstrap_ok,
            first_bootstrap_violation: p.first_bootstrap_violation,
            max_sphere_defect: p.max_sphere_defect,
            max_div_u: p.max_div_u,
            remap_loss: p.remap_loss,
            remaps: p.remaps,
            diag_rows: p.diag_rows,
            final_checkpoint: self.last_checkpoint.clone(),
            data_report: self.data_report.clone(),
            wall_seconds: started.elapsed().as_secs_f64(),
        };
        let path = self.dir.join(SUMMARY_FILE);
        let text = serde_json::to_string_pretty(&summary)?;
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        Ok(RunOutcome { dir: self.dir, summary })
    }
}

fn write_config(config: &SimConfig, dir: &Path) -> Result<()> {
    let path = dir.join(CONFIG_FILE);
    std::fs::write(&path, config.to_flat_toml()?).map_err(|e| Error::io(&path, e))
}

/// Integrate `config` to `time.t_end` (or blow-up), writing into `out_dir`:
/// `config.toml`, `diagnostics.csv`, `checkpoints/` and `summary.json`.
pub fn run_simulation(config: &SimConfig, out_dir: &Path) -> Result<RunOutcome> {
    let started = Instant::now();
    config.validate()?;
    let (state, data_report) = initial_state(config)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    write_config(config, out_dir)?;
    let writer = DiagnosticsWriter::create(&out_dir.join(DIAGNOSTICS_FILE))?;

    let y0 = YNorms::of(&state, &config.norms);
    let g0 = sup_grad_n(&state.d);
    let progress = RunProgress {
        step: 0,
        t0: state.t,
        diag_rows: 0,
        accs: EnergyAccumulators::new(),
        monitor: BlowUpMonitor::with_threshold(g0, config.run.blowup_threshold),
        k_boot: bootstrap_constant(y0.hess13, y0.omega, config.run.c_cal),
        peak_grad_n: g0,
        t_of_peak: state.t,
        peak_energy: 0.0,
        bootstrap_ok: true,
        first_bootstrap_violation: None,
        verdict: Verdict::Healthy,
        worst_verdict: Verdict::Healthy,
        max_sphere_defect: 0.0,
        max_div_u: 0.0,
        remap_loss: 0.0,
        remaps: 0,
    };
    let n_total = config.steps_from(state.t, config.time.t_end);
    let min0 = min_director_length(&state.d);
    let mut runner = Runner {
        config: config.clone(),
        params: config.phys,
        opts: config.step_options(),
        dir: out_dir.to_path_buf(),
        state,
        progress,
        writer,
        data_report,
        verdict: Verdict::Healthy,
        last_energy: None,
        last_checkpoint: None,
        message: None,
    };
    runner.sample(min0)?;
    let term = runner.advance(n_total)?;
    runner.finish(term, started)
}

/// Continue the run that wrote `checkpoint` up to `t_end`. Diagnostics rows
/// written after the checkpoint are discarded and recomputed.
pub fn resume(checkpoint: &Path, t_end: f64) -> Result<RunOutcome> {
    let started = Instant::now();
    let json_path = checkpoint.with_extension("json");
    let text = std::fs::read_to_string(&json_path).map_err(|e| Error::io(&json_path, e))?;
    let sidecar: CheckpointSidecar = serde_json::from_str(&text)?;
    let mut config = sidecar.config;
    let header = read_checkpoint_header(checkpoint)?;
    if !(t_end > header.t) {
        return Err(Error::Config(format!("t_end = {t_end} must exceed checkpoint time {}", header.t)));
    }
    config.time.t_end = t_end;
    config.validate()?;
    let grid: Grid = config.grid.to_grid()?;
    let state = load_checkpoint(checkpoint, &grid)?;
    let dir = checkpoint
        .parent()
        .and_then(Path::parent)
        .ok_or_else(|| Error::Config(format!("{} is not inside a run directory", checkpoint.display())))?
        .to_path_buf();
    write_config(&config, &dir)?;
    let writer = DiagnosticsWriter::reopen_truncated(&dir.join(DIAGNOSTICS_FILE), sidecar.progress.diag_rows)?;
    let n_total = config.steps_from(sidecar.progress.t0, t_end);
    let verdict = sidecar.progress.verdict;
    let mut runner = Runner {
        params: config.phys,
        opts: config.step_options(),
        config,
        dir,
        state,
        progress: sidecar.progress,
        writer,
        data_report: sidecar.data_report,
        verdict,
        last_energy: None,
        last_checkpoint: Some(checkpoint.to_path_buf()),
        message: None,
    };
    if !runner.progress.accs.d13.is_empty() {
        runner.last_energy = Some(energy_functional(&runner.progress.accs, &runner.config.norms, runner.amplitude())?);
    }
    let term = runner.advance(n_total)?;
    runner.finish(term, started)
}

/// Read a run directory's summary.
pub fn read_summary(dir: &Path) -> Result<RunSummary> {
    let path = dir.join(SUMMARY_FILE);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    Ok(serde_json::from_str(&text)?)
}
