//! Row generators, one per experiment.
//!
//! Column meaning by experiment:
//!
//! | experiment          | point1        | point2     | exact                 | predicted               |
//! |---------------------|---------------|------------|-----------------------|-------------------------|
//! | `recurrence`        | 0 (a), 1 (b)  | 0          | computed coefficient  | shifted Jacobi value    |
//! | `outer`             | Re z          | Im z       | abs p_n(z)            | abs predictor           |
//! | `bulk`              | x             | 0          | p_n(x) / amplitude    | predictor / amplitude   |
//! | `bessel-edge*`      | x             | Bessel arg | p_n(x)                | predictor               |
//! | `airy-edge*`        | x             | Bessel arg | p_n(x)                | predictor               |
//! | `density`           | y             | 0          | K_n(y, y) / n         | 1 / (pi sqrt(y(1-y)))   |
//! | `sine`              | u             | v          | bulk-scaled K_n       | sine kernel             |
//! | `hard-edge`         | u             | v          | edge-scaled K_n       | Bessel kernel           |
//! | `soft-edge`         | u             | v          | soft-edge-scaled K_n  | Airy kernel             |
//! | `kernel-invariants` | x (0 = trace) | y (1)      | K_n(x, y) or trace    | int K K or n            |
//!
//! For `outer` the absolute error is `abs(p_n(z) - predictor)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rug::Float;

use pjop_core::asym::{
    airy_edge0_asymptotic, airy_edge1_asymptotic, bessel_edge0_asymptotic,
    bessel_edge1_asymptotic, bulk_amplitude, bulk_asymptotic, outer_asymptotic, AsymConfig, Side,
};
use pjop_core::cdkernel::{kernel, kernel_diagonal, projection_residual, trace};
use pjop_core::opseq::{eval_monic, eval_monic_complex, jacobi_recurrence};
use pjop_core::unikernels::{compare_bulk, compare_hard_edge, compare_soft_edge, ErrorReport};
use pjop_core::{RecurrenceTable, Result};

use crate::cache::rule_for;
use crate::config::{Experiment, ExperimentConfig};

/// Minimum distance from the cut for `outer`.
pub const OUTER_DELTA: f64 = 1e-3;

/// One CSV row before formatting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub n: usize,
    pub point1: f64,
    pub point2: f64,
    pub exact: f64,
    pub predicted: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

impl Row {
    pub fn new(n: usize, point1: f64, point2: f64, exact: f64, predicted: f64) -> Self {
        let abs_err = (exact - predicted).abs();
        Self::with_error(n, point1, point2, exact, predicted, abs_err)
    }

    pub fn with_error(n: usize, point1: f64, point2: f64, exact: f64, predicted: f64, abs_err: f64) -> Self {
        let rel_err = if exact == 0.0 { abs_err } else { abs_err / exact.abs() };
        Self {
            n,
            point1,
            point2,
            exact,
            predicted,
            abs_err,
            rel_err,
        }
    }
}

/// `x` with Bessel argument `arg` at the given edge.
pub fn edge_point(side: Side, n: usize, arg: f64) -> f64 {
    let s = arg / (2.0 * n as f64);
    match side {
        Side::Right => s.cos().powi(2),
        Side::Left => s.sin().powi(2),
    }
}

fn per_point<T, F>(cfg: &ExperimentConfig, points: &[T], f: F) -> Result<Vec<Row>>
where
    T: Sync,
    F: Fn(usize, &T) -> Result<Row> + Sync,
{
    let jobs: Vec<(usize, &T)> = cfg
        .n_list
        .iter()
        .flat_map(|&n| points.iter().map(move |p| (n, p)))
        .collect();
    jobs.par_iter().map(|(n, p)| f(*n, p)).collect()
}

fn from_report(report: ErrorReport) -> Vec<Row> {
    report
        .rows
        .iter()
        .map(|r| Row::new(report.n, r.u, r.v, r.measured, r.target))
        .collect()
}

fn value(tab: &RecurrenceTable, n: usize, x: f64) -> Result<f64> {
    Ok(eval_monic(tab, n, x)?.value.to_f64())
}

/// Rows of `cfg.experiment`, ordered by `n`, then by grid point.
pub fn rows(cfg: &ExperimentConfig, tab: &RecurrenceTable) -> Result<Vec<Row>> {
    let p = tab.params;
    let asym = AsymConfig::default();
    let g = &cfg.grid;
    match cfg.experiment {
        Experiment::Recurrence => {
            let (ja, jb) = jacobi_recurrence(p.alpha, p.beta, tab.n_max, cfg.precision)?;
            let mut out = Vec::with_capacity(2 * tab.n_max + 2);
            for n in 0..=tab.n_max {
                for (k, (c, j)) in [(&tab.a[n], &ja[n]), (&tab.b[n], &jb[n])].into_iter().enumerate() {
                    let diff = Float::with_val(cfg.precision.bits, c - j).abs().to_f64();
                    out.push(Row::with_error(n, k as f64, 0.0, c.to_f64(), j.to_f64(), diff));
                }
            }
            Ok(out)
        }
        Experiment::Outer => per_point(cfg, &g.z, |n, &z: &Complex64| {
            let exact = eval_monic_complex(tab, n, z)?;
            let pred = outer_asymptotic(n, z, &p, OUTER_DELTA)?;
            Ok(Row::with_error(n, z.re, z.im, exact.norm(), pred.norm(), (exact - pred).norm()))
        }),
        Experiment::Bulk => per_point(cfg, &g.points, |n, &x| {
            let amp = bulk_amplitude(n, x, &p)?;
            Ok(Row::new(n, x, 0.0, value(tab, n, x)? / amp, bulk_asymptotic(n, x, &p)? / amp))
        }),
        Experiment::BesselEdge1 => per_point(cfg, &g.points, |n, &arg| {
            let x = edge_point(Side::Right, n, arg);
            Ok(Row::new(n, x, arg, value(tab, n, x)?, bessel_edge1_asymptotic(n, x, &p, &asym)?))
        }),
        Experiment::BesselEdge0 => per_point(cfg, &g.points, |n, &arg| {
            let x = edge_point(Side::Left, n, arg);
            Ok(Row::new(n, x, arg, value(tab, n, x)?, bessel_edge0_asymptotic(n, x, &p, &asym)?))
        }),
        Experiment::AiryEdge1 => per_point(cfg, &g.points, |n, &arg| {
            let x = edge_point(Side::Right, n, arg);
            Ok(Row::new(n, x, arg, value(tab, n, x)?, airy_edge1_asymptotic(n, x, &p, &asym)?))
        }),
        Experiment::AiryEdge0 => per_point(cfg, &g.points, |n, &arg| {
            let x = edge_point(Side::Left, n, arg);
            let pred = airy_edge0_asymptotic(n, x, &p, g.airy_variant, &asym)?;
            Ok(Row::new(n, x, arg, value(tab, n, x)?, pred))
        }),
        Experiment::Density => per_point(cfg, &g.points, |n, &y| {
            let exact = kernel_diagonal(tab, n, y)? / n as f64;
            Ok(Row::new(n, y, 0.0, exact, 1.0 / (PI * (y * (1.0 - y)).sqrt())))
        }),
        Experiment::Sine => collect_reports(cfg, |n| compare_bulk(tab, n, g.center, &g.uv_pairs())),
        Experiment::HardEdge => collect_reports(cfg, |n| compare_hard_edge(tab, n, g.side, &g.uv_pairs())),
        Experiment::SoftEdge => collect_reports(cfg, |n| {
            compare_soft_edge(tab, n, g.side, &g.uv_pairs(), g.soft_edge_scale)
        }),
        Experiment::KernelInvariants => kernel_invariants(cfg, tab),
    }
}

fn collect_reports<F>(cfg: &ExperimentConfig, f: F) -> Result<Vec<Row>>
where
    F: Fn(usize) -> Result<ErrorReport>,
{
    let mut out = Vec::new();
    for &n in &cfg.n_list {
        out.extend(from_report(f(n)?));
    }
    Ok(out)
}

fn kernel_invariants(cfg: &ExperimentConfig, tab: &RecurrenceTable) -> Result<Vec<Row>> {
    let rule = rule_for(cfg)?;
    let pts = &cfg.grid.points;
    let pairs: Vec<(f64, f64)> = pts
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| pts[i..].iter().map(move |&y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for &n in &cfg.n_list {
        let tr = trace(tab, n, &rule)?;
        let diff = Float::with_val(tr.prec(), &tr - n as u32).abs().to_f64();
        out.push(Row::with_error(n, 0.0, 1.0, tr.to_f64(), n as f64, diff));
        for &(x, y) in &pairs {
            let k = kernel(tab, n, x, y)?;
            let res = projection_residual(tab, n, x, y, &rule)?;
            out.push(Row::with_error(n, x, y, k, k + res, res.abs()));
        }
    }
    Ok(out)
}
