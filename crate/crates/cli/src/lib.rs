//! Experiment harness: parses a configuration, builds or loads the
//! recurrence table, evaluates one experiment and writes
//! `<experiment>.csv` and `summary.txt`.

// Negated comparisons are used deliberately so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cache;
pub mod config;
pub mod experiments;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

pub use config::{parse_config, ConfigError, Experiment, ExperimentConfig, GridSpec, QuadSpec};

/// Environment variable overriding the table cache directory.
pub const CACHE_ENV: &str = "PJOP_CACHE";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] pjop_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl RunError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        RunError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Table cache directory; the output directory when `None`.
    pub cache_dir: Option<PathBuf>,
    pub force_rebuild: bool,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub csv_path: PathBuf,
    pub summary_path: PathBuf,
    pub table_path: PathBuf,
    pub table_computed: bool,
    pub rows: usize,
}

/// Removes the listed files unless disarmed.
struct Cleanup(Vec<PathBuf>);

impl Drop for Cleanup {
    fn drop(&mut self) {
        for p in &self.0 {
            let _ = fs::remove_file(p);
        }
    }
}

pub fn run(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<RunReport, RunError> {
    let out = &cfg.output;
    let cache_dir = opts.cache_dir.clone().unwrap_or_else(|| out.clone());
    let mut cleanup = Cleanup(Vec::new());

    let cached = cache::load_or_build(cfg, &cache_dir, opts.force_rebuild)?;
    if cached.computed {
        cleanup.0.push(cached.path.clone());
    }
    let rows = experiments::rows(cfg, &cached.table)?;
    let table_file = cached
        .path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();

    fs::create_dir_all(out).map_err(|e| RunError::io(out, e))?;
    let csv_path = out.join(format!("{}.csv", cfg.experiment));
    let summary_path = out.join("summary.txt");
    cleanup.0.push(csv_path.clone());
    fs::write(&csv_path, report::csv(cfg, &rows)).map_err(|e| RunError::io(&csv_path, e))?;
    cleanup.0.push(summary_path.clone());
    fs::write(&summary_path, report::summary(cfg, &rows, &table_file))
        .map_err(|e| RunError::io(&summary_path, e))?;

    cleanup.0.clear();
    Ok(RunReport {
        csv_path,
        summary_path,
        table_path: cached.path,
        table_computed: cached.computed,
        rows: rows.len(),
    })
}
