//! Acceptance criterion 9: every subcommand is byte-deterministic — the
//! same seed gives identical output files across repeated invocations and
//! across `--jobs 1` vs `--jobs 8`.

use frogsim_cli::ExperimentConfig;
use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

fn run_to_dir(args: &[&str], dir: &Path, out: &str) -> BTreeMap<String, Vec<u8>> {
    let status = Command::new(env!("CARGO_BIN_EXE_frogsim"))
        .args(args)
        .args(["--out", out])
        .current_dir(dir)
        .output()
        .expect("binary runs");
    assert!(
        status.status.success(),
        "{:?}: {}",
        args,
        String::from_utf8_lossy(&status.stderr)
    );
    let mut files = BTreeMap::new();
    for entry in std::fs::read_dir(dir.join(out)).unwrap() {
        let entry = entry.unwrap();
        files.insert(
            entry.file_name().to_string_lossy().to_string(),
            std::fs::read(entry.path()).unwrap(),
        );
    }
    assert!(!files.is_empty(), "{args:?} wrote no files");
    files
}

#[test]
fn criterion_9_cli_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let write = |name: &str, contents: &str| std::fs::write(dir.join(name), contents).unwrap();

    write(
        "simulate.cfg",
        "model.family = elliptic_drift\nmodel.d = 1\nmodel.epsilon = 0.3\n\
         model.residual = plus_e1\ncounts.law = logtail\ncounts.c0 = 1\n\
         counts.tail_d = 1\ncounts.t0 = 3\ncounts.cap = 256\n\
         sweep.radii = 8,16\nsweep.horizon_factor = 8\n\
         run.replicas = 12\nrun.seed = 7\n",
    );
    write(
        "coverage.cfg",
        "model.family = elliptic_drift\nmodel.d = 1\nmodel.epsilon = 0.25\n\
         counts.law = constant\ncounts.m = 3\ncounts.cap = 8\n\
         coverage.radii = 2,4,8\ncoverage.window_radius = 16\ncoverage.horizon = 64\n\
         run.replicas = 64\nrun.seed = 7\n",
    );
    write(
        "graph.txt",
        "sites 5\n0 1 0.5\n1 2 0.9\n2 3 0.8\n0 4 0.2\nmarks 3 4\n",
    );
    write(
        "dx.cfg",
        "dx.graph = graph.txt\ndx.m_max = 6\nrun.seed = 7\n",
    );
    write(
        "series.cfg",
        "series.a = 0.5\nseries.c = 1\nseries.d = 1\nseries.law = heavy_logtail\n\
         series.theta = 2\nseries.n_max = 20000\nrun.seed = 7\n",
    );
    write(
        "drift.cfg",
        "model.family = outward_drift\nmodel.d = 1\nmodel.bias = 0.8\n\
         drift.delta = 0.6\ndrift.box_radius = 50\nrun.seed = 7\n",
    );
    write("factor.cfg", "factor.p2 = 0.25\nrun.seed = 7\n");
    write(
        "raabe.cfg",
        "raabe.epsilon = 0.125\nraabe.d = 2\nraabe.c_so = 40\nraabe.r_max = 100000\nrun.seed = 7\n",
    );

    let jobs = ["1", "8"];
    let subcommands = [
        ("simulate", "simulate.cfg"),
        ("coverage", "coverage.cfg"),
        ("dx", "dx.cfg"),
        ("series", "series.cfg"),
        ("drift-check", "drift.cfg"),
        ("factor", "factor.cfg"),
        ("raabe", "raabe.cfg"),
    ];
    for (cmd, cfg) in subcommands {
        let mut baseline: Option<BTreeMap<String, Vec<u8>>> = None;
        for j in jobs {
            for attempt in 0..2 {
                let out_name = format!("out_{cmd}_{j}_{attempt}");
                let files = run_to_dir(&[cmd, "--config", cfg, "--jobs", j], dir, &out_name);
                match &baseline {
                    None => baseline = Some(files),
                    Some(expected) => {
                        assert_eq!(
                            expected, &files,
                            "{cmd}: outputs differ (jobs={j}, attempt={attempt})"
                        );
                    }
                }
            }
        }
        // Every CSV output must round-trip its embedded configuration.
        let original =
            ExperimentConfig::parse(&std::fs::read_to_string(dir.join(cfg)).unwrap()).unwrap();
        for (name, bytes) in baseline.as_ref().unwrap() {
            if name.ends_with(".csv") {
                let embedded =
                    ExperimentConfig::parse_embedded(&String::from_utf8(bytes.clone()).unwrap())
                        .unwrap();
                assert_eq!(embedded, original, "{cmd}/{name}: header round-trip");
            }
        }
    }
    println!("acceptance criterion 9: PASS (byte-identical across reruns and --jobs 1/8)");
}
