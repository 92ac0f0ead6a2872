//! Per-sample diagnostics and their CSV file.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{velocity_from_vorticity, FlowState, Verdict};
use crate::norms::{EnergyAccumulators, XNormAccumulator, YNorms};
use crate::spectral::{deriv_x, deriv_y_phys};

/// One CSV row. `X_*` columns are the four squared terms of each running
/// `X` norm (running max, then the three time integrals); `E_t` includes
/// the `A^delta` factor on the `d13` part.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub Y_d13: f64,
    pub Y_hess_d13: f64,
    pub Y_omega: f64,
    pub X_d13_sup: f64,
    pub X_d13_grad: f64,
    pub X_d13_dx13: f64,
    pub X_d13_mix: f64,
    pub X_hess_d13_sup: f64,
    pub X_hess_d13_grad: f64,
    pub X_hess_d13_dx13: f64,
    pub X_hess_d13_mix: f64,
    pub X_omega_sup: f64,
    pub X_omega_grad: f64,
    pub X_omega_dx13: f64,
    pub X_omega_mix: f64,
    pub E_t: f64,
    pub sup_grad_n: f64,
    pub max_div_u: f64,
    pub min_abs_n: f64,
    pub remap_loss: f64,
    pub verdict: Verdict,
}

pub const DIAGNOSTICS_HEADER: [&str; 22] = [
    "t",
    "Y_d13",
    "Y_hess_d13",
    "Y_omega",
    "X_d13_sup",
    "X_d13_grad",
    "X_d13_dx13",
    "X_d13_mix",
    "X_hess_d13_sup",
    "X_hess_d13_grad",
    "X_hess_d13_dx13",
    "X_hess_d13_mix",
    "X_omega_sup",
    "X_omega_grad",
    "X_omega_dx13",
    "X_omega_mix",
    "E_t",
    "sup_grad_n",
    "max_div_u",
    "min_abs_n",
    "remap_loss",
    "verdict",
];

/// Largest coefficient of `div u` for the velocity induced by `w`.
pub fn max_div_u(state: &FlowState) -> f64 {
    let (u1, u2) = velocity_from_vorticity(&state.omega);
    let mut div = deriv_x(&u1);
    div.axpy(1.0, &deriv_y_phys(&u2)).expect("same frame");
    div.max_abs_coeff()
}

/// Point-wise quantities measured on the state itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointDiagnostics {
    pub sup_grad_n: f64,
    pub min_abs_n: f64,
    pub remap_loss: f64,
    pub verdict: Verdict,
}

impl DiagnosticsRow {
    pub fn assemble(
        state: &FlowState,
        y: &YNorms,
        accs: &EnergyAccumulators,
        energy: f64,
        point: PointDiagnostics,
    ) -> Self {
        let x = |a: &XNormAccumulator, i: usize| a.terms[i];
        Self {
            t: state.t,
            Y_d13: y.d13,
            Y_hess_d13: y.hess13,
            Y_omega: y.omega,
            X_d13_sup: x(&accs.d13, 0),
            X_d13_grad: x(&accs.d13, 1),
            X_d13_dx13: x(&accs.d13, 2),
            X_d13_mix: x(&accs.d13, 3),
            X_hess_d13_sup: x(&accs.hess13, 0),
            X_hess_d13_grad: x(&accs.hess13, 1),
            X_hess_d13_dx13: x(&accs.hess13, 2),
            X_hess_d13_mix: x(&accs.hess13, 3),
            X_omega_sup: x(&accs.omega, 0),
            X_omega_grad: x(&accs.omega, 1),
            X_omega_dx13: x(&accs.omega, 2),
            X_omega_mix: x(&accs.omega, 3),
            E_t: energy,
            sup_grad_n: point.sup_grad_n,
            max_div_u: max_div_u(state),
            min_abs_n: point.min_abs_n,
            remap_loss: point.remap_loss,
            verdict: point.verdict,
        }
    }

    /// The twelve `X` terms in column order.
    pub fn x_terms(&self) -> [f64; 12] {
        [
            self.X_d13_sup,
            self.X_d13_grad,
            self.X_d13_dx13,
            self.X_d13_mix,
            self.X_hess_d13_sup,
            self.X_hess_d13_grad,
            self.X_hess_d13_dx13,
            self.X_hess_d13_mix,
            self.X_omega_sup,
            self.X_omega_grad,
            self.X_omega_dx13,
            self.X_omega_mix,
        ]
    }
}

/// Appending CSV writer that flushes after every row.
pub struct DiagnosticsWriter {
    inner: csv::Writer<File>,
    rows: u64,
}

impl DiagnosticsWriter {
    pub fn create(path: &Path) -> Result<Self> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut inner = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        inner.write_record(DIAGNOSTICS_HEADER)?;
        inner.flush().map_err(|e| Error::io(path, e))?;
        Ok(Self { inner, rows: 0 })
    }

    /// Keep the header and the first `rows` data rows, then append after them.
    pub fn reopen_truncated(path: &Path, rows: u64) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut kept = Vec::new();
        for (n, line) in BufReader::new(file).lines().enumerate() {
            if n as u64 > rows {
                break;
            }
            kept.push(line.map_err(|e| Error::io(path, e))?);
        }
        if kept.len() as u64 != rows + 1 {
            return Err(Error::CheckpointFormat(format!(
                "{} holds {} rows, checkpoint expects {rows}",
                path.display(),
                kept.len().saturating_sub(1)
            )));
        }
        let mut file = File::create(path).map_err(|e| Error::io(path, e))?;
        for line in &kept {
            writeln!(file, "{line}").map_err(|e| Error::io(path, e))?;
        }
        drop(file);
        let file = OpenOptions::new().append(true).open(path).map_err(|e| Error::io(path, e))?;
        let inner = csv::WriterBuilder::new().has_headers(false).from_writer(file);
        Ok(Self { inner, rows })
    }

    pub fn write(&mut self, row: &DiagnosticsRow) -> Result<()> {
        self.inner.serialize(row)?;
        self.inner.flush().map_err(|e| Error::io("diagnostics.csv", e))?;
        self.rows += 1;
        Ok(())
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }
}

pub fn read_diagnostics(path: &Path) -> Result<Vec<DiagnosticsRow>> {
    let mut rdr = csv::Reader::from_path(path)?;
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != DIAGNOSTICS_HEADER {
        return Err(Error::Config(format!("{} has an unexpected header", path.display())));
    }
    rdr.deserialize().map(|r| r.map_err(Error::from)).collect()
}
