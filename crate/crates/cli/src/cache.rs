//! Recurrence-table cache keyed by a hash of the build inputs.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use pjop_core::mpquad::{build_rule, select_rule};
use pjop_core::opseq::{auto_rule, stieltjes};
use pjop_core::{PanelSpec, QuadratureRule, RecurrenceTable};

use crate::config::ExperimentConfig;
use crate::RunError;

/// Canonical description of everything that determines a table.
pub fn cache_key(cfg: &ExperimentConfig) -> String {
    format!(
        "alpha={:?};beta={:?};t={:?};N={};bits={};quad={}",
        cfg.params.alpha,
        cfg.params.beta,
        cfg.params.t,
        cfg.n_max,
        cfg.precision.bits,
        cfg.quad.key()
    )
}

/// `pjop-<16 hex digits>.rct`.
pub fn table_file_name(cfg: &ExperimentConfig) -> String {
    let digest = Sha256::digest(cache_key(cfg).as_bytes());
    format!("pjop-{}.rct", &hex::encode(digest)[..16])
}

/// Quadrature rule described by the configuration.
pub fn rule_for(cfg: &ExperimentConfig) -> pjop_core::Result<QuadratureRule> {
    let q = cfg.quad;
    if q.points.is_none() && q.levels.is_none() && q.ratio == PanelSpec::DEFAULT_RATIO {
        return auto_rule(&cfg.params, cfg.n_max, cfg.precision);
    }
    let points = q
        .points
        .unwrap_or_else(|| PanelSpec::points_for_degree(cfg.n_max, q.ratio, cfg.precision));
    match q.levels {
        Some(levels) => build_rule(levels, points, q.ratio, cfg.precision),
        None => Ok(select_rule(
            &cfg.params,
            points,
            q.ratio,
            cfg.precision,
            cfg.precision.refinement_tol(),
        )?
        .0),
    }
}

/// A loaded or freshly computed table.
pub struct CachedTable {
    pub table: RecurrenceTable,
    pub path: PathBuf,
    pub computed: bool,
}

fn matches(tab: &RecurrenceTable, cfg: &ExperimentConfig) -> bool {
    tab.params == cfg.params && tab.n_max == cfg.n_max && tab.bits() == cfg.precision.bits
}

/// Loads the table from `dir` when present and consistent, otherwise
/// computes it and writes it there.
pub fn load_or_build(
    cfg: &ExperimentConfig,
    dir: &Path,
    force_rebuild: bool,
) -> Result<CachedTable, RunError> {
    let path = dir.join(table_file_name(cfg));
    if !force_rebuild {
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(table) = RecurrenceTable::from_rct(&text) {
                if matches(&table, cfg) {
                    return Ok(CachedTable {
                        table,
                        path,
                        computed: false,
                    });
                }
            }
        }
    }
    let rule = rule_for(cfg)?;
    let table = stieltjes(&cfg.params, cfg.n_max, &rule)?;
    fs::create_dir_all(dir).map_err(|e| RunError::io(dir, e))?;
    fs::write(&path, table.to_rct()).map_err(|e| RunError::io(&path, e))?;
    Ok(CachedTable {
        table,
        path,
        computed: true,
    })
}
