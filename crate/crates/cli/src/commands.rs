//! Subcommand implementations. Each returns the list of `(file name,
//! contents)` pairs to write, fully rendered, so outputs are byte-identical
//! for identical configurations regardless of parallelism.

use crate::config::ExperimentConfig;
use crate::error::{CliError, ErrorKind};
use crate::graphfile::parse_marked_graph;
use frogsim::analysis::coverage::{coverage_profile, stopped_drift_factory};
use frogsim::analysis::factor::factor_invariant_measure;
use frogsim::analysis::raabe::raabe_ratio_table;
use frogsim::analysis::reach::reach_weight;
use frogsim::analysis::recurrence::{
    classify_recurrence, recurrence_stat_from_counts, Classification,
};
use frogsim::analysis::report::{fmt_f64, Csv};
use frogsim::analysis::series::series_oracle;
use frogsim::conductance::sample_conductance_env;
use frogsim::counts::sample_counts;
use frogsim::kernel::{check_drift_condition, Kernel};
use frogsim::rng::RngStream;
use frogsim::sources::make_sampler;
use frogsim::window::Window;
use frogsim::{run_activation, FrogConfig, Site};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::sync::Arc;

pub type Outputs = Vec<(String, String)>;

fn csv_with_config(config: &ExperimentConfig) -> Csv {
    let mut csv = Csv::new();
    for line in config.header_lines() {
        csv.comment(&format!("config: {line}"));
    }
    csv
}

fn json_config(config: &ExperimentConfig) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> = config
        .header_lines()
        .into_iter()
        .map(|line| {
            let (k, v) = line.split_once(" = ").unwrap();
            (k.to_string(), serde_json::Value::String(v.to_string()))
        })
        .collect();
    serde_json::Value::Object(map)
}

fn classification_label(c: Classification) -> &'static str {
    match c {
        Classification::RecurrentLike => "recurrent-like",
        Classification::TransientLike => "transient-like",
        Classification::Indeterminate => "indeterminate",
    }
}

/// One activation run of the configured model; returns the distinct-origin
/// visitor count of the origin.
fn simulate_one(
    config: &ExperimentConfig,
    kernel: Option<&Kernel>,
    radius: u32,
    horizon: u32,
    replicate: u32,
    master: &RngStream,
) -> Result<u64, CliError> {
    let rng = master.derive(replicate as u64);
    let dim = config.model_dim()?;
    let family = config.require("model.family")?;
    let (window, v) = match family {
        "comb" => {
            let teeth: u32 = config.parse_num_or("sweep.tooth_height", radius)?;
            (
                Window::Comb {
                    spine_radius: radius,
                    tooth_height: teeth,
                },
                Site::comb(0, 0),
            )
        }
        "conductance" => (Window::centered_box(dim, radius as i64), Site::zero(dim)),
        _ => (Window::L1Ball { dim, radius }, Site::zero(dim)),
    };
    let law = config.counts_law()?;
    let mut counts = sample_counts(&law, &window, &rng)?;
    let cap = config.count_cap()?;
    if cap > 0 {
        counts = counts.capped(cap);
    }
    let kernel = match kernel {
        Some(k) => k.clone(),
        None => {
            let env = sample_conductance_env(&window, &config.conductance_law()?, &rng)?;
            Kernel::Conductance(Arc::new(env))
        }
    };
    let mut frog_config = FrogConfig::new(counts, make_sampler(kernel, rng));
    let budget: u64 = config.parse_num_or("sim.trajectory_radius", 0u64)?;
    if budget > 0 {
        frog_config = frog_config.with_budget(budget);
    }
    let trace = run_activation(&frog_config, &v, horizon, &BTreeSet::from([v]), None)?;
    Ok(trace.distinct_visiting_origins(&v))
}

/// `simulate`: activation sweeps over box radii, distinct-visitor counts
/// per replicate, quartile summary and the classification heuristic.
pub fn simulate(config: &ExperimentConfig, pool: &rayon::ThreadPool) -> Result<Outputs, CliError> {
    let sweep = config.sweep()?;
    let replicas = config.replicas()?;
    let master = RngStream::new(config.seed()?);
    let kernel = if config.is_conductance_model()? {
        None
    } else {
        Some(config.kernel()?)
    };

    let mut tasks = Vec::new();
    for (radius, horizon) in &sweep {
        for r in 0..replicas {
            tasks.push((*radius, *horizon, r));
        }
    }
    let results: Vec<Result<u64, CliError>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(radius, horizon, r)| {
                simulate_one(config, kernel.as_ref(), *radius, *horizon, *r, &master)
                    .map_err(|e| e.with_context(&format!("L={radius} replicate={r}")))
            })
            .collect()
    });

    let mut csv = csv_with_config(config);
    csv.header(&["box_radius", "horizon", "replicate", "distinct_origins"]);
    let mut cells: Vec<((u32, u32), Vec<u64>)> = Vec::new();
    for ((radius, horizon, r), result) in tasks.iter().zip(results) {
        let n = result?;
        csv.row(&[
            radius.to_string(),
            horizon.to_string(),
            r.to_string(),
            n.to_string(),
        ]);
        match cells.iter_mut().find(|(k, _)| *k == (*radius, *horizon)) {
            Some((_, list)) => list.push(n),
            None => cells.push(((*radius, *horizon), vec![n])),
        }
    }
    let stat = recurrence_stat_from_counts("origin".into(), cells)?;
    let classification = if stat.groups.len() >= 2 {
        Some(classify_recurrence(&stat)?)
    } else {
        None
    };

    let summary = serde_json::json!({
        "config": json_config(config),
        "stat": stat,
        "classification": classification.map(classification_label),
    });
    Ok(vec![
        ("simulate.csv".into(), csv.finish()),
        (
            "simulate_summary.json".into(),
            serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        ),
    ])
}

/// `coverage`: ball-coverage profile of the stopped drift process.
pub fn coverage(config: &ExperimentConfig, pool: &rayon::ThreadPool) -> Result<Outputs, CliError> {
    if config.require("model.family")? != "elliptic_drift" {
        return Err(CliError::new(
            ErrorKind::Config,
            "coverage requires model.family = elliptic_drift",
        ));
    }
    let dim: usize = config.parse_num("model.d")?;
    let eps: f64 = config.parse_num("model.epsilon")?;
    config.kernel()?; // re-validate the full model section
    let radii: Vec<u32> = config.parse_list("coverage.radii")?;
    let max_r = *radii
        .iter()
        .max()
        .ok_or_else(|| CliError::new(ErrorKind::Config, "coverage.radii is empty"))?;
    let window_radius: u32 = config.parse_num_or("coverage.window_radius", 2 * max_r)?;
    let horizon: u32 = config.parse_num_or("coverage.horizon", (4 * window_radius).max(64))?;
    let replicas = config.replicas()?;
    let cap = match config.count_cap()? {
        0 => u64::MAX,
        c => c,
    };
    let law = config.counts_law()?;
    let factory = stopped_drift_factory(
        law,
        eps,
        dim,
        window_radius,
        cap,
        RngStream::new(config.seed()?),
    );
    let report =
        pool.install(|| coverage_profile(&factory, &Site::zero(dim), &radii, replicas, horizon))?;

    let mut csv = csv_with_config(config);
    csv.header(&["radius", "covered", "replicas", "p_hat", "std_err"]);
    for p in &report.points {
        csv.row(&[
            p.radius.to_string(),
            p.covered.to_string(),
            p.replicas.to_string(),
            fmt_f64(p.p_hat),
            fmt_f64(p.std_err),
        ]);
    }
    let summary = serde_json::json!({
        "config": json_config(config),
        "report": report,
    });
    Ok(vec![
        ("coverage.csv".into(), csv.finish()),
        (
            "coverage_summary.json".into(),
            serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        ),
    ])
}

/// `dx`: reach weights on a marked-graph file.
pub fn dx(config: &ExperimentConfig) -> Result<Outputs, CliError> {
    let path = config.require("dx.graph")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(ErrorKind::Io, format!("reading `{path}`: {e}")))?;
    let graph = parse_marked_graph(&text)?;
    let m_max: u32 = config.parse_num_or("dx.m_max", graph.len() as u32)?;
    let sources: Vec<u32> = match config.get_or("dx.source", "all") {
        "all" => (0..graph.len() as u32).collect(),
        raw => vec![raw.parse().map_err(|_| {
            CliError::new(ErrorKind::Config, format!("dx.source: bad value `{raw}`"))
        })?],
    };
    let mut csv = csv_with_config(config);
    csv.header(&["source", "value", "witness"]);
    let mut values = Vec::new();
    for s in sources {
        let r = reach_weight(&graph, s, m_max)?;
        let witness = r
            .witness
            .iter()
            .map(|id| id.to_string())
            .collect::<Vec<_>>()
            .join("-");
        csv.row(&[s.to_string(), fmt_f64(r.value), witness.clone()]);
        values.push(serde_json::json!({
            "source": s,
            "value": r.value,
            "witness": r.witness,
        }));
    }
    let summary = serde_json::json!({
        "config": json_config(config),
        "m_max": m_max,
        "reach_weights": values,
    });
    Ok(vec![
        ("dx.csv".into(), csv.finish()),
        (
            "dx_summary.json".into(),
            serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        ),
    ])
}

/// `series`: partial sums and verdict of the weighted double series.
pub fn series(config: &ExperimentConfig) -> Result<Outputs, CliError> {
    let a: f64 = config.parse_num("series.a")?;
    let c: f64 = config.parse_num("series.c")?;
    let d: u32 = config.parse_num("series.d")?;
    let n_max: u64 = config.parse_num_or("series.n_max", 100_000u64)?;
    let sampler = config.series_sampler()?;
    let report = series_oracle(a, c, d, &sampler, n_max, &RngStream::new(config.seed()?))?;

    let mut csv = csv_with_config(config);
    csv.header(&["checkpoint_n", "partial_sum"]);
    for (n, s) in &report.checkpoints {
        csv.row(&[n.to_string(), fmt_f64(*s)]);
    }
    csv.comment(&format!("total = {}", fmt_f64(report.total)));
    if let Some(tail) = report.tail_bound {
        csv.comment(&format!("tail_bound = {}", fmt_f64(tail)));
    }
    csv.comment(&format!("verdict = {:?}", report.verdict).to_lowercase());
    let summary = serde_json::json!({
        "config": json_config(config),
        "report": report,
    });
    Ok(vec![
        ("series.csv".into(), csv.finish()),
        (
            "series_summary.json".into(),
            serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        ),
    ])
}

/// `drift-check`: certify the outward drift condition on a box.
pub fn drift_check(config: &ExperimentConfig) -> Result<Outputs, CliError> {
    let kernel = config.kernel()?;
    let delta: f64 = config.parse_num("drift.delta")?;
    let radius: u32 = config.parse_num("drift.box_radius")?;
    let window = Window::L1Ball {
        dim: kernel.dim(),
        radius,
    };
    let report = check_drift_condition(&kernel, &window, delta)?;
    let mut csv = csv_with_config(config);
    csv.header(&[
        "holds",
        "delta",
        "support_bound",
        "worst_site",
        "worst_margin",
        "sites_checked",
    ]);
    csv.row(&[
        report.holds.to_string(),
        fmt_f64(report.delta),
        report.support_bound.to_string(),
        report.worst_site.to_string(),
        fmt_f64(report.worst_margin),
        report.sites_checked.to_string(),
    ]);
    let summary = serde_json::json!({
        "config": json_config(config),
        "holds": report.holds,
        "delta": report.delta,
        "support_bound": report.support_bound,
        "worst_site": report.worst_site.to_string(),
        "worst_margin": report.worst_margin,
        "sites_checked": report.sites_checked,
    });
    Ok(vec![
        ("drift_check.csv".into(), csv.finish()),
        (
            "drift_check_summary.json".into(),
            serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        ),
    ])
}

/// `factor`: invariant measure of the comb factor chain.
pub fn factor(config: &ExperimentConfig) -> Result<Outputs, CliError> {
    let p2: f64 = config.parse_num("factor.p2")?;
    let measure = factor_invariant_measure(p2)?;
    let mut csv = csv_with_config(config);
    csv.comment(&format!("truncation = {}", measure.truncation));
    csv.comment(&format!("residual_l1 = {}", fmt_f64(measure.residual_l1)));
    csv.header(&["height", "mass"]);
    for (y, m) in measure.mass.iter().enumerate() {
        csv.row(&[y.to_string(), fmt_f64(*m)]);
    }
    let summary = serde_json::json!({
        "config": json_config(config),
        "measure": measure,
    });
    Ok(vec![
        ("factor.csv".into(), csv.finish()),
        (
            "factor_summary.json".into(),
            serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        ),
    ])
}

/// `raabe`: ratio-test table for the coverage bound sequence.
pub fn raabe(config: &ExperimentConfig) -> Result<Outputs, CliError> {
    let eps: f64 = config.parse_num("raabe.epsilon")?;
    let dim: usize = config.parse_num("raabe.d")?;
    let c_so: f64 = config.parse_num("raabe.c_so")?;
    let r_max: u64 = config.parse_num_or("raabe.r_max", 100_000u64)?;
    let constants = match (
        config.parse_num_or("raabe.c_dd", f64::NAN)?,
        config.parse_num_or("raabe.c_cc", f64::NAN)?,
    ) {
        (c_dd, c_cc) if c_dd.is_nan() && c_cc.is_nan() => None,
        (c_dd, c_cc) if !c_dd.is_nan() && !c_cc.is_nan() => Some((c_dd, c_cc)),
        _ => {
            return Err(CliError::new(
                ErrorKind::Config,
                "raabe.c_dd and raabe.c_cc must be given together",
            ))
        }
    };
    let mut r_values: Vec<u64> = Vec::new();
    let mut r = 1u64;
    while r < r_max {
        r_values.push(r);
        r *= 2;
    }
    r_values.push(r_max);
    r_values.dedup();
    let table = raabe_ratio_table(eps, dim, c_so, &r_values, constants)?;

    let mut csv = csv_with_config(config);
    csv.comment(&format!("c_dd = {}", fmt_f64(table.c_dd)));
    csv.comment(&format!("c_cc = {}", fmt_f64(table.c_cc)));
    csv.comment(&format!(
        "limit_estimate = {}",
        fmt_f64(table.limit_estimate)
    ));
    csv.comment(&format!(
        "predicted_limit = {}",
        fmt_f64(table.predicted_limit)
    ));
    csv.comment(&format!("below_minus_one = {}", table.below_minus_one));
    csv.header(&["r", "ratio_diagnostic"]);
    for row in &table.rows {
        csv.row(&[row.r.to_string(), fmt_f64(row.value)]);
    }
    let summary = serde_json::json!({
        "config": json_config(config),
        "table": table,
    });
    Ok(vec![
        ("raabe.csv".into(), csv.finish()),
        (
            "raabe_summary.json".into(),
            serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        ),
    ])
}
