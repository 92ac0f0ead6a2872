use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lcsim_core::experiment::{linear_verify, resume, run_simulation, sweep_amplitude, SimConfig, Termination};
use lcsim_core::flow::Verdict;
use lcsim_core::initial_data::{family_report, gap_check, InitialDataParams};
use lcsim_core::norms::{NormParams, Regime};
use lcsim_core::Error;

const EXIT_FAILURE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_BLOW_UP: u8 = 3;

#[derive(Parser)]
#[command(name = "lcsim", version, about = "Nematic liquid crystal flow around Couette flow")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration. Exits with 3 if the run blew up.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// One run per (A, lambda) cell, in parallel; writes phase_table.csv.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        amplitudes: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        lambdas: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Linear checks: exact Kelvin modes, dissipation exponents, inviscid decay.
    LinearVerify {
        #[arg(long)]
        out: PathBuf,
    },
    /// Norms, thresholds and gap check of the director family, as JSON.
    DataReport {
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long = "n", alias = "N")]
        n: f64,
        #[arg(long, default_value_t = 0.4)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 1.5)]
        delta: f64,
        #[arg(long, default_value_t = 0.008)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        c_cal: f64,
        /// Check eps against the director-only window (1/6, 1/2).
        #[arg(long)]
        director_only: bool,
    },
    /// Continue a run from one of its checkpoints.
    Resume {
        #[arg(long)]
        checkpoint: PathBuf,
        #[arg(long = "t-end")]
        t_end: f64,
    },
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    if e.is_validation() {
        ExitCode::from(EXIT_VALIDATION)
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn execute(cmd: Command) -> Result<ExitCode, Error> {
    match cmd {
        Command::Run { config, out } => {
            let cfg = SimConfig::load(&config)?;
            let outcome = run_simulation(&cfg, &out)?;
            let s = &outcome.summary;
            println!(
                "{}: verdict {} ({:?}) at t = {} (original time {}), peak |grad n| = {:.6e}, bootstrap E <= 2K: {}",
                outcome.dir.display(),
                s.verdict,
                s.termination,
                s.t_final,
                s.t_final_original,
                s.peak_grad_n,
                s.bootstrap_ok
            );
            if let Some(m) = &s.message {
                eprintln!("{m}");
            }
            Ok(if s.verdict == Verdict::BlownUp {
                ExitCode::from(EXIT_BLOW_UP)
            } else if s.termination != Termination::Completed {
                ExitCode::from(EXIT_FAILURE)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Sweep {
            config,
            amplitudes,
            lambdas,
            jobs,
            out,
        } => {
            let cfg = SimConfig::load(&config)?;
            let outcome = sweep_amplitude(&cfg, &amplitudes, &lambdas, jobs, &out)?;
            for r in &outcome.rows {
                if !r.error.is_empty() {
                    eprintln!("cell {} (A = {}, lambda = {}): {}", r.cell, r.amplitude, r.lambda, r.error);
                }
            }
            println!("{} cells -> {}", outcome.rows.len(), outcome.table.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::LinearVerify { out } => {
            let rep = linear_verify(&out)?;
            for c in &rep.checks {
                let tag = if c.pass { "ok" } else { "out of range" };
                println!("{:<20} {:>14.6e}  [{}, {}]  {tag}", c.quantity, c.value, c.lo, c.hi);
            }
            Ok(if rep.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            })
        }
        Command::DataReport {
            theta,
            lambda,
            n,
            eps,
            m,
            delta,
            a,
            c_cal,
            director_only,
        } => {
            let norms = NormParams {
                a,
                m,
                eps,
                delta,
                regime: if director_only { Regime::DirectorOnly } else { Regime::Coupled },
            };
            norms.validate()?;
            let params = InitialDataParams { lambda, n, theta };
            let report = family_report(&params, &norms, c_cal)?;
            let gap = gap_check(&params, &norms, c_cal)?;
            let mut json = serde_json::to_value(&report)?;
            json["gap_check"] = serde_json::to_value(gap)?;
            println!("{}", serde_json::to_string_pretty(&json)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Resume { checkpoint, t_end } => {
            let outcome = resume(&checkpoint, t_end)?;
            let s = &outcome.summary;
            println!(
                "{}: verdict {} ({:?}) at t = {}",
                outcome.dir.display(),
                s.verdict,
                s.termination,
                s.t_final
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    execute(cli.command).unwrap_or_else(fail)
}
