use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use pjop_cli::{parse_config, run, RunOptions, CACHE_ENV};

/// Runs one Pollaczek-Jacobi experiment and writes its CSV and summary.
#[derive(Debug, Parser)]
#[command(name = "pjop", version)]
struct Args {
    /// Experiment configuration file.
    config: PathBuf,
    /// Output directory; overrides the `output` key.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Working precision in bits; overrides the `bits` key.
    #[arg(long, value_name = "B")]
    bits: Option<u32>,
    /// Recompute the recurrence table even when cached.
    #[arg(long)]
    force_rebuild: bool,
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pjop: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn real_main() -> anyhow::Result<()> {
    let args = Args::parse();
    let text = std::fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let mut cfg = parse_config(&text).with_context(|| format!("in {}", args.config.display()))?;
    if let Some(dir) = args.out {
        cfg.output = dir;
    }
    if let Some(bits) = args.bits {
        cfg.precision = pjop_core::PrecisionConfig::new(bits)?;
    }
    let opts = RunOptions {
        cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
        force_rebuild: args.force_rebuild,
    };
    let report = run(&cfg, &opts)?;
    println!(
        "{} rows -> {} (table {}, {})",
        report.rows,
        report.csv_path.display(),
        report.table_path.display(),
        if report.table_computed { "computed" } else { "cached" }
    );
    Ok(())
}
