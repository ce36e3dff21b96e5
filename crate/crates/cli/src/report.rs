//! CSV and summary formatting.

use std::fmt::Write as _;

use crate::config::{Experiment, ExperimentConfig};
use crate::experiments::Row;

pub const CSV_HEADER: &str = "experiment,alpha,beta,t,n,point1,point2,exact,predicted,abs_err,rel_err";

/// Scientific notation with 20 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.19e}")
}

pub fn csv(cfg: &ExperimentConfig, rows: &[Row]) -> String {
    let mut out = String::with_capacity(256 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    let p = cfg.params;
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            cfg.experiment,
            num(p.alpha),
            num(p.beta),
            num(p.t),
            r.n,
            num(r.point1),
            num(r.point2),
            num(r.exact),
            num(r.predicted),
            num(r.abs_err),
            num(r.rel_err)
        );
    }
    out
}

/// Absolute errors of one grid point across `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub point1: f64,
    pub point2: f64,
    pub errors: Vec<(usize, f64)>,
}

impl Series {
    /// `err(n_{k+1}) / err(n_k)` for consecutive degrees.
    pub fn decay_ratios(&self) -> Vec<f64> {
        self.errors.windows(2).map(|w| w[1].1 / w[0].1).collect()
    }
}

/// Groups rows by grid point, keeping first-appearance order.
pub fn series(rows: &[Row]) -> Vec<Series> {
    let mut out: Vec<Series> = Vec::new();
    for r in rows {
        let key = (r.point1.to_bits(), r.point2.to_bits());
        match out
            .iter_mut()
            .find(|s| (s.point1.to_bits(), s.point2.to_bits()) == key)
        {
            Some(s) => s.errors.push((r.n, r.abs_err)),
            None => out.push(Series {
                point1: r.point1,
                point2: r.point2,
                errors: vec![(r.n, r.abs_err)],
            }),
        }
    }
    out
}

fn max_per_n(rows: &[Row], ns: &[usize]) -> Vec<(usize, f64)> {
    ns.iter()
        .map(|&n| {
            let m = rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.abs_err)
                .fold(0.0, f64::max);
            (n, m)
        })
        .collect()
}

fn fmt_ratios(r: &[f64]) -> String {
    if r.is_empty() {
        "-".to_string()
    } else {
        r.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ")
    }
}

pub fn summary(cfg: &ExperimentConfig, rows: &[Row], table_file: &str) -> String {
    let p = cfg.params;
    let mut s = String::new();
    let _ = writeln!(s, "experiment: {}", cfg.experiment);
    let _ = writeln!(s, "alpha = {:?}, beta = {:?}, t = {:?}", p.alpha, p.beta, p.t);
    let _ = writeln!(s, "table: {table_file} (N = {}, {} bits, quad {})", cfg.n_max, cfg.precision.bits, cfg.quad.key());
    let _ = writeln!(s, "expected error order: {}", cfg.experiment.expected_order());
    if cfg.experiment == Experiment::Recurrence {
        let worst = rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
        let _ = writeln!(s, "max rel err against shifted Jacobi: {}", crate::report::num(worst));
        return s;
    }
    let ns = &cfg.n_list;
    let _ = writeln!(
        s,
        "decay ratios are abs_err(n_next) / abs_err(n) over n = {}",
        ns.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
    );
    let overall = max_per_n(rows, ns);
    let overall_ratios: Vec<f64> = overall.windows(2).map(|w| w[1].1 / w[0].1).collect();
    let _ = writeln!(
        s,
        "max abs_err per n: {}",
        overall.iter().map(|(n, e)| format!("{n}:{e:.6e}")).collect::<Vec<_>>().join(" ")
    );
    let _ = writeln!(s, "max abs_err decay ratios: {}", fmt_ratios(&overall_ratios));
    let _ = writeln!(s);
    let _ = writeln!(s, "point1 point2 | abs_err per n | decay ratios");
    for ser in series(rows) {
        let _ = writeln!(
            s,
            "{:.6} {:.6} | {} | {}",
            ser.point1,
            ser.point2,
            ser.errors.iter().map(|(_, e)| format!("{e:.6e}")).collect::<Vec<_>>().join(" "),
            fmt_ratios(&ser.decay_ratios())
        );
    }
    s
}
