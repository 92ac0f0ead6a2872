//! Configuration, runs, sweeps, checkpoints and diagnostics files.

mod checkpoint;
mod config;
mod diagnostics;
mod run;
mod sweep;
mod verify;

pub use checkpoint::{
    decode_checkpoint, decode_header, encode_checkpoint, load_checkpoint, read_checkpoint_header, save_checkpoint,
    CheckpointHeader, CHECKPOINT_MAGIC, CHECKPOINT_VERSION,
};
pub use config::{GridConfig, InitConfig, InitKind, RunConfig, SimConfig, TimeConfig};
pub use diagnostics::{
    max_div_u, read_diagnostics, DiagnosticsRow, DiagnosticsWriter, PointDiagnostics, DIAGNOSTICS_HEADER,
};
pub use run::{
    initial_state, read_summary, resume, run_simulation, CheckpointSidecar, RunOutcome, RunProgress, RunSummary,
    Termination, CHECKPOINT_DIR, CONFIG_FILE, DIAGNOSTICS_FILE, SUMMARY_FILE,
};
pub use sweep::{read_phase_table, sweep_amplitude, PhaseRow, SweepOutcome, PHASE_TABLE_FILE};
pub use verify::{
    enhanced_dissipation_cases, kelvin_solver_comparison, linear_verify, standard_inviscid_slope,
    standard_kelvin_comparison, standard_kelvin_modes, FitCheck, KelvinComparison, KelvinTraceRow,
    LinearVerifyReport, ED_DEPTH, ED_KS, ED_NUS,
};
