use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use semistar_cli::config::{Command, JobConfig};
use semistar_cli::suites::default_config;
use semistar_cli::{ConfigError, EXIT_CONFIG};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Report,
    Summary,
}

/// Exact star-operation and ideal-class computations over valuation domains
/// and quadratic orders.
#[derive(Debug, Parser)]
#[command(name = "semistar", version)]
struct Args {
    /// JSON job config
    #[arg(long)]
    config: Option<PathBuf>,
    /// overrides the config seed
    #[arg(long)]
    seed: Option<u64>,
    /// runs the named property suite (on the config backend, or a default one)
    #[arg(long)]
    suite: Option<String>,
    /// writes the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "report")]
    format: Format,
}

fn load(args: &Args) -> Result<JobConfig, ConfigError> {
    let mut cfg = match (&args.config, &args.suite) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io { path: path.display().to_string(), msg: e.to_string() })?;
            JobConfig::from_json(&text)?
        }
        (None, Some(suite)) => default_config(suite)?,
        (None, None) => return Err(ConfigError::Missing("pass --config FILE or --suite NAME".into())),
    };
    if let Some(suite) = &args.suite {
        cfg.command = Command::Propsuite;
        cfg.suite = Some(suite.clone());
    }
    if let Some(seed) = args.seed {
        cfg.seed = Some(seed);
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let start = Instant::now();
    let outcome = load(&args).and_then(|cfg| semistar_cli::run(&cfg));
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let text = match args.format {
        Format::Report => report.to_json(),
        Format::Summary => report.summary(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        }
        None => print!("{text}"),
    }
    if let Format::Summary = args.format {
        eprintln!("elapsed {:.2?}", start.elapsed());
    }
    ExitCode::from(report.exit_code() as u8)
}
