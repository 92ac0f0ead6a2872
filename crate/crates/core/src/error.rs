use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected} values, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("fields carry different shear times ({0} vs {1})")]
    ShearMismatch(f64, f64),
    #[error("shear remap by {shift} does not land on an integer label offset")]
    NonIntegerShift { shift: f64 },
    #[error("time step {dt} exceeds CFL bound {bound}")]
    CflViolation { dt: f64, bound: f64 },
    #[error("director length vanished (|n| = {min_norm}) at a collocation point")]
    DegenerateDirector { min_norm: f64 },
    #[error("remap discarded {fraction:e} of the total energy (tolerance {tol:e})")]
    RemapLoss { fraction: f64, tol: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("profile support cannot be resolved: {0}")]
    Unresolvable(String),
    #[error("frequency band violation: {0}")]
    BandViolation(String),
    #[error("missing accumulator for {0}")]
    MissingAccumulator(&'static str),
    #[error("time regression: sample at t={t} precedes last sample t={last}")]
    TimeRegression { t: f64, last: f64 },
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("checkpoint format error: {0}")]
    CheckpointFormat(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Errors caused by bad user input rather than by the numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParam(_)
                | Error::Config(_)
                | Error::Unresolvable(_)
                | Error::BandViolation(_)
                | Error::CheckpointFormat(_)
        )
    }
}
