use std::path::Path;
use std::process::{Command, Output};

const CONFIG: &str = r#"
grid.nx = 32
grid.ny = 64
grid.lx = 43.982297150257104
grid.ly = 12.566370614359172
phys.A = 100.0
phys.nu = 1.0
phys.lam = 1.0
phys.gam = 1.0
time.dt = 0.02
time.t_end = 0.4
time.diag_every = 5
time.checkpoint_every = 10
init.kind = "director_family"
init.lambda = 0.3
init.N = 4.0
init.theta = 1.0
"#;

fn lcsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcsim")).args(args).output().unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("run.toml");
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn run_writes_a_run_directory() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write_config(d.path(), CONFIG);
    let out = d.path().join("out");
    let o = lcsim(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["diagnostics.csv", "summary.json", "config.toml", "checkpoints/ckpt_00000020.lcsm"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let summary: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["verdict"], "healthy");
}

#[test]
fn bad_config_is_exit_two() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write_config(d.path(), &CONFIG.replace("time.dt = 0.02", "time.dt = -1.0"));
    let o = lcsim(&["run", "--config", &cfg, "--out", d.path().join("o").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let cfg = write_config(d.path(), &format!("{CONFIG}grid.bogus = 1\n"));
    let o = lcsim(&["run", "--config", &cfg, "--out", d.path().join("o").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let o = lcsim(&["run", "--out", "x"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn blow_up_is_exit_three() {
    let d = tempfile::tempdir().unwrap();
    let text = CONFIG
        .replace("grid.ny = 64", "grid.ny = 128")
        .replace("phys.A = 100.0", "phys.A = 10000.0")
        .replace("time.dt = 0.02", "time.dt = 0.1")
        .replace("time.t_end = 0.4", "time.t_end = 40.0")
        + "run.blowup_threshold = 1.5\nrun.remap_loss_tol = 1.0\n";
    let cfg = write_config(d.path(), &text);
    let o = lcsim(&["run", "--config", &cfg, "--out", d.path().join("o").to_str().unwrap()]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn resume_continues_a_run() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write_config(d.path(), CONFIG);
    let out = d.path().join("out");
    assert_eq!(code(&lcsim(&["run", "--config", &cfg, "--out", out.to_str().unwrap()])), 0);
    let ck = out.join("checkpoints/ckpt_00000020.lcsm");
    let o = lcsim(&["resume", "--checkpoint", ck.to_str().unwrap(), "--t-end", "0.6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    // header + samples at steps 0, 5, ..., 30
    assert_eq!(text.lines().count(), 8);
    let o = lcsim(&["resume", "--checkpoint", "/nonexistent/ckpt.lcsm", "--t-end", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn sweep_writes_phase_table() {
    let d = tempfile::tempdir().unwrap();
    let cfg = write_config(d.path(), &CONFIG.replace("time.t_end = 0.4", "time.t_end = 0.1"));
    let out = d.path().join("sweep");
    let o = lcsim(&[
        "sweep",
        "--config",
        &cfg,
        "--amplitudes",
        "10,1000",
        "--lambdas",
        "0.25,0.3",
        "--jobs",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let table = std::fs::read_to_string(out.join("phase_table.csv")).unwrap();
    assert_eq!(table.lines().count(), 5);
    assert!(table.lines().next().unwrap().starts_with("cell,A,lambda,verdict"));
}

#[test]
fn data_report_prints_json() {
    let o = lcsim(&["data-report", "--theta", "1", "--lambda", "0.3", "--n", "38", "--eps", "0.4", "--m", "1", "--delta", "1.5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["L", "H", "E", "gap_ok", "A_bar", "A_max", "K", "gap_check", "note"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["E"].as_f64().unwrap() > 8.0 * std::f64::consts::PI);
    let o = lcsim(&["data-report", "--theta", "1", "--lambda", "0.3", "--n", "38", "--eps", "0.2"]);
    assert_eq!(code(&o), 2);
    let o = lcsim(&["data-report", "--theta", "1", "--lambda", "1.5", "--n", "38"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn linear_verify_passes() {
    let d = tempfile::tempdir().unwrap();
    let o = lcsim(&["linear-verify", "--out", d.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("k_exponent"));
    assert!(d.path().join("fit_report.csv").exists());
}
