//! Batch front-end: parse an experiment config, run the requested
//! diagnostic, write CSV and JSON artifacts carrying the full config for
//! replay.

use clap::{Parser, Subcommand};
use frogsim_cli::commands;
use frogsim_cli::config::ExperimentConfig;
use frogsim_cli::error::{CliError, ErrorKind};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "frogsim",
    about = "Activation-spreading particle system simulator and diagnostics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Experiment configuration file (flat `key = value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (default: FROGSIM_OUT or the working directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for replicate-level parallelism (0 = all cores).
    /// Outputs are byte-identical regardless of this setting.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Overrides `run.seed` from the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Activation runs over a box sweep; distinct-visitor statistics.
    Simulate,
    /// Ball-coverage profile of the stopped drift process.
    Coverage,
    /// Reach weights on a marked-graph file.
    Dx,
    /// Partial sums and verdict for the weighted double series.
    Series,
    /// Certify the outward drift condition on a box.
    DriftCheck,
    /// Invariant measure of the comb factor chain.
    Factor,
    /// Ratio-test table for the coverage bound sequence.
    Raabe,
}

fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    let config_path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::new(ErrorKind::Config, "--config <FILE> is required"))?;
    let text = std::fs::read_to_string(config_path).map_err(|e| {
        CliError::new(
            ErrorKind::Config,
            format!("reading config `{}`: {e}", config_path.display()),
        )
    })?;
    let mut config = ExperimentConfig::parse(&text)?;
    if let Some(seed) = cli.seed {
        config.set("run.seed", seed.to_string());
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::new(ErrorKind::Config, format!("thread pool: {e}")))?;

    let outputs = match cli.command {
        Command::Simulate => commands::simulate(&config, &pool)?,
        Command::Coverage => commands::coverage(&config, &pool)?,
        Command::Dx => commands::dx(&config)?,
        Command::Series => commands::series(&config)?,
        Command::DriftCheck => commands::drift_check(&config)?,
        Command::Factor => commands::factor(&config)?,
        Command::Raabe => commands::raabe(&config)?,
    };

    let out_dir = cli
        .out
        .clone()
        .or_else(|| std::env::var_os("FROGSIM_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir)?;
    let mut written = Vec::new();
    for (name, contents) in outputs {
        let path = out_dir.join(name);
        std::fs::write(&path, contents)?;
        written.push(path);
    }
    Ok(written)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.kind.exit_code())
        }
    }
}
