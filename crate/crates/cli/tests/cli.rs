//! End-to-end checks of the command-line front-end.

use frogsim_cli::ExperimentConfig;
use std::path::Path;
use std::process::{Command, Output};

fn frogsim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frogsim"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) {
    std::fs::write(dir.join(name), contents).unwrap();
}

const SIM_CFG: &str = "model.family = elliptic_drift\n\
model.d = 1\n\
model.epsilon = 0.3\n\
model.residual = plus_e1\n\
counts.law = constant\n\
counts.m = 1\n\
sweep.radii = 4,8\n\
sweep.horizon_factor = 8\n\
run.replicas = 5\n\
run.seed = 11\n";

#[test]
fn output_headers_round_trip_to_the_config() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "sim.cfg", SIM_CFG);
    let out = frogsim(
        &["simulate", "--config", "sim.cfg", "--out", "o"],
        tmp.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(tmp.path().join("o/simulate.csv")).unwrap();
    let embedded = ExperimentConfig::parse_embedded(&csv).unwrap();
    let original = ExperimentConfig::parse(SIM_CFG).unwrap();
    assert_eq!(embedded, original);
}

#[test]
fn seed_override_lands_in_the_header() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "sim.cfg", SIM_CFG);
    let out = frogsim(
        &[
            "simulate", "--config", "sim.cfg", "--out", "o", "--seed", "99",
        ],
        tmp.path(),
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(tmp.path().join("o/simulate.csv")).unwrap();
    assert!(csv.contains("# config: run.seed = 99"));
    assert!(!csv.contains("# config: run.seed = 11"));
}

#[test]
fn invalid_config_fails_with_code_2_and_single_line_error() {
    let tmp = tempfile::tempdir().unwrap();
    write(
        tmp.path(),
        "bad.cfg",
        "model.family = elliptic_drift\nmodel.d = 1\nmodel.epsilon = 0.9\n\
         counts.law = constant\ncounts.m = 1\nsweep.radii = 4\nrun.replicas = 1\nrun.seed = 1\n",
    );
    let out = frogsim(
        &["simulate", "--config", "bad.cfg", "--out", "o"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().count(), 1, "stderr: {err}");
    assert!(
        err.starts_with("frogsim-error: kind=config msg="),
        "stderr: {err}"
    );
}

#[test]
fn window_exhaustion_fails_with_code_3_and_names_the_run() {
    let tmp = tempfile::tempdir().unwrap();
    write(
        tmp.path(),
        "tight.cfg",
        &format!("{SIM_CFG}sim.trajectory_radius = 6\n"),
    );
    let out = frogsim(
        &["simulate", "--config", "tight.cfg", "--out", "o"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.starts_with("frogsim-error: kind=window"),
        "stderr: {err}"
    );
    assert!(
        err.contains("L=") && err.contains("replicate="),
        "stderr: {err}"
    );
}

#[test]
fn missing_graph_file_fails_with_io_code() {
    let tmp = tempfile::tempdir().unwrap();
    write(
        tmp.path(),
        "dx.cfg",
        "dx.graph = nowhere.txt\nrun.seed = 1\n",
    );
    let out = frogsim(&["dx", "--config", "dx.cfg", "--out", "o"], tmp.path());
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn factor_domain_error_uses_code_4() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "f.cfg", "factor.p2 = 0.6\nrun.seed = 1\n");
    let out = frogsim(&["factor", "--config", "f.cfg", "--out", "o"], tmp.path());
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.starts_with("frogsim-error: kind=domain"),
        "stderr: {err}"
    );
}

#[test]
fn drift_check_reports_failure_with_exit_zero() {
    let tmp = tempfile::tempdir().unwrap();
    write(
        tmp.path(),
        "drift.cfg",
        "model.family = elliptic_drift\nmodel.d = 1\nmodel.epsilon = 0.5\n\
         model.residual = stay\ndrift.delta = 0.1\ndrift.box_radius = 10\nrun.seed = 1\n",
    );
    let out = frogsim(
        &["drift-check", "--config", "drift.cfg", "--out", "o"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(tmp.path().join("o/drift_check.csv")).unwrap();
    assert!(csv.contains("false,"));
}

#[test]
fn env_var_sets_default_output_directory() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "sim.cfg", SIM_CFG);
    let out = Command::new(env!("CARGO_BIN_EXE_frogsim"))
        .args(["simulate", "--config", "sim.cfg"])
        .env("FROGSIM_OUT", "from_env")
        .current_dir(tmp.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(tmp.path().join("from_env/simulate.csv").exists());
}

#[test]
fn comb_and_conductance_models_simulate() {
    let tmp = tempfile::tempdir().unwrap();
    // Heavy spine law (theta above -log p1), one frog per tooth site.
    write(
        tmp.path(),
        "comb.cfg",
        "model.family = comb\nmodel.p1 = 0.4\nmodel.p2 = 0.2\n\
         counts.law = comb\ncounts.spine_law = logmoment\ncounts.spine_theta = 1.5\n\
         counts.tooth_law = constant\ncounts.tooth_m = 1\ncounts.cap = 64\n\
         sweep.radii = 6\nsweep.tooth_height = 4\nsweep.horizon_factor = 8\n\
         run.replicas = 3\nrun.seed = 4\n",
    );
    let out = frogsim(
        &["simulate", "--config", "comb.cfg", "--out", "oc"],
        tmp.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    write(
        tmp.path(),
        "cond.cfg",
        "model.family = conductance\nmodel.d = 2\nmodel.law = bernoulli\nmodel.p = 0.7\n\
         counts.law = constant\ncounts.m = 1\n\
         sweep.radii = 6\nsweep.horizons = 48\n\
         run.replicas = 3\nrun.seed = 4\n",
    );
    let out = frogsim(
        &["simulate", "--config", "cond.cfg", "--out", "od"],
        tmp.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(tmp.path().join("od/simulate.csv")).unwrap();
    assert!(csv.lines().filter(|l| !l.starts_with('#')).count() >= 4);
}
