//! The Christoffel-Darboux kernel
//! `K_n(x, y) = sqrt(w(x) w(y)) sum_{i<n} gamma_i^2 p_i(x) p_i(y)` in its
//! divided-difference form, and the rescalings used for local limits.

use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::mpquad::QuadratureRule;
use crate::opseq::RecurrenceTable;
use crate::weight::{sqrt_weight_mp, weight_mp};

/// Relative separation below which the kernel switches to the confluent form.
pub const CONFLUENT_THRESHOLD: f64 = 1e-6;

/// One kernel value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub n: usize,
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

impl KernelEval {
    pub fn new(tab: &RecurrenceTable, n: usize, x: f64, y: f64) -> Result<Self> {
        Ok(Self {
            n,
            x,
            y,
            value: kernel(tab, n, x, y)?,
        })
    }
}

fn check_n(tab: &RecurrenceTable, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::DegreeOutOfRange { n, max: tab.n_max });
    }
    tab.check_degree(n)
}

fn check_point(x: &Float) -> Result<()> {
    if *x > 0 && *x < 1 {
        Ok(())
    } else {
        Err(Error::Domain {
            value: x.to_f64(),
            domain: "(0, 1)",
        })
    }
}

/// Extended-precision kernel at points given in the table precision.
pub fn kernel_mp(tab: &RecurrenceTable, n: usize, x: &Float, y: &Float) -> Result<Float> {
    check_n(tab, n)?;
    check_point(x)?;
    check_point(y)?;
    let bits = tab.bits();
    let diff = Float::with_val(bits, x - y);
    let scale = Float::with_val(bits, x.abs_ref()).max(&Float::with_val(bits, y.abs_ref()));
    if Float::with_val(bits, diff.abs_ref()) < scale * CONFLUENT_THRESHOLD {
        let mid = Float::with_val(bits, x + y) / 2u32;
        return kernel_diagonal_mp(tab, n, &mid);
    }
    let fx = tab.forward(n, x)?;
    let fy = tab.forward(n, y)?;
    let mut num = Float::with_val(bits, &fx.p * &fy.p_prev);
    num -= Float::with_val(bits, &fy.p * &fx.p_prev);
    num /= &diff;
    num *= tab.gamma_sq(n - 1)?;
    num *= sqrt_weight_mp(x, &tab.params)?;
    num *= sqrt_weight_mp(y, &tab.params)?;
    Ok(num)
}

/// Confluent kernel `gamma_{n-1}^2 w(x) (p_n' p_{n-1} - p_{n-1}' p_n)`.
pub fn kernel_diagonal_mp(tab: &RecurrenceTable, n: usize, x: &Float) -> Result<Float> {
    check_n(tab, n)?;
    check_point(x)?;
    let bits = tab.bits();
    let f = tab.forward(n, x)?;
    let mut v = Float::with_val(bits, &f.dp * &f.p_prev);
    v -= Float::with_val(bits, &f.dp_prev * &f.p);
    v *= tab.gamma_sq(n - 1)?;
    v *= weight_mp(x, &tab.params)?;
    Ok(v)
}

pub fn kernel(tab: &RecurrenceTable, n: usize, x: f64, y: f64) -> Result<f64> {
    let bits = tab.bits();
    Ok(kernel_mp(tab, n, &Float::with_val(bits, x), &Float::with_val(bits, y))?.to_f64())
}

pub fn kernel_diagonal(tab: &RecurrenceTable, n: usize, x: f64) -> Result<f64> {
    Ok(kernel_diagonal_mp(tab, n, &Float::with_val(tab.bits(), x))?.to_f64())
}

/// Reference evaluation of the kernel as the explicit sum over `i < n`.
pub fn kernel_sum(tab: &RecurrenceTable, n: usize, x: f64, y: f64) -> Result<f64> {
    check_n(tab, n)?;
    let bits = tab.bits();
    let xf = Float::with_val(bits, x);
    let yf = Float::with_val(bits, y);
    check_point(&xf)?;
    check_point(&yf)?;
    let mut sum = Float::new(bits);
    for i in 0..n {
        let px = tab.forward(i, &xf)?.p;
        let py = tab.forward(i, &yf)?.p;
        sum += px * py * tab.gamma_sq(i)?;
    }
    sum *= sqrt_weight_mp(&xf, &tab.params)?;
    sum *= sqrt_weight_mp(&yf, &tab.params)?;
    Ok(sum.to_f64())
}

/// `|step| K_n(c + u step, c + v step)` with the scaled points formed at
/// table precision.
pub fn affine_scaled_kernel(
    tab: &RecurrenceTable,
    n: usize,
    center: &Float,
    step: &Float,
    u: f64,
    v: f64,
) -> Result<f64> {
    let bits = tab.bits();
    let point = |s: f64| -> Result<Float> {
        let z = Float::with_val(bits, step * s) + center;
        if z > 0 && z < 1 {
            Ok(z)
        } else {
            Err(Error::ScaledPointOutOfDomain { value: z.to_f64() })
        }
    };
    let x = point(u)?;
    let y = point(v)?;
    let k = kernel_mp(tab, n, &x, &y)?;
    Ok((k * Float::with_val(bits, step.abs_ref())).to_f64())
}

/// Equilibrium density `1 / (pi sqrt(a (1 - a)))` at table precision.
pub fn density_mp(a: &Float) -> Float {
    let bits = a.prec();
    let one_minus = Float::with_val(bits, 1 - a);
    let root = (Float::with_val(bits, a * &one_minus)).sqrt();
    (root * Float::with_val(bits, Constant::Pi)).recip()
}

/// `(1 / (n rho(a))) K_n(a + u / (n rho(a)), a + v / (n rho(a)))`.
pub fn bulk_scaled_kernel(tab: &RecurrenceTable, n: usize, a: f64, u: f64, v: f64) -> Result<f64> {
    let bits = tab.bits();
    let af = Float::with_val(bits, a);
    check_point(&af)?;
    let step = (density_mp(&af) * n as u32).recip();
    affine_scaled_kernel(tab, n, &af, &step, u, v)
}

fn edge_step(tab: &RecurrenceTable, n: usize) -> Float {
    let n2 = Float::with_val(tab.bits(), n as u32).square() * 4u32;
    n2.recip()
}

/// `(1 / 4n^2) K_n(1 - u / 4n^2, 1 - v / 4n^2)`.
pub fn edge_scaled_kernel_right(tab: &RecurrenceTable, n: usize, u: f64, v: f64) -> Result<f64> {
    check_edge_args(u, v)?;
    let step = -edge_step(tab, n);
    affine_scaled_kernel(tab, n, &Float::with_val(tab.bits(), 1), &step, u, v)
}

/// `(1 / 4n^2) K_n(u / 4n^2, v / 4n^2)`.
pub fn edge_scaled_kernel_left(tab: &RecurrenceTable, n: usize, u: f64, v: f64) -> Result<f64> {
    check_edge_args(u, v)?;
    let step = edge_step(tab, n);
    affine_scaled_kernel(tab, n, &Float::new(tab.bits()), &step, u, v)
}

fn check_edge_args(u: f64, v: f64) -> Result<()> {
    for s in [u, v] {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Domain {
                value: s,
                domain: "u, v > 0",
            });
        }
    }
    Ok(())
}

/// `int K_n(x, x) dx` on the rule; equals `n` for a rank-`n` projection.
pub fn trace(tab: &RecurrenceTable, n: usize, rule: &QuadratureRule) -> Result<Float> {
    check_n(tab, n)?;
    let vals: Vec<Float> = rule
        .nodes
        .par_iter()
        .map(|z| kernel_diagonal_mp(tab, n, z))
        .collect::<Result<_>>()?;
    Ok(weighted_sum(&vals, rule))
}

/// `int K_n(x, z) K_n(z, y) dz - K_n(x, y)` on the rule.
pub fn projection_residual(
    tab: &RecurrenceTable,
    n: usize,
    x: f64,
    y: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    check_n(tab, n)?;
    let bits = tab.bits();
    let xf = Float::with_val(bits, x);
    let yf = Float::with_val(bits, y);
    let vals: Vec<Float> = rule
        .nodes
        .par_iter()
        .map(|z| Ok(kernel_mp(tab, n, &xf, z)? * kernel_mp(tab, n, z, &yf)?))
        .collect::<Result<_>>()?;
    let integral = weighted_sum(&vals, rule);
    Ok((integral - kernel_mp(tab, n, &xf, &yf)?).to_f64())
}

fn weighted_sum(vals: &[Float], rule: &QuadratureRule) -> Float {
    let bits = rule.prec.bits;
    let mut acc = Float::new(bits);
    for (v, w) in vals.iter().zip(&rule.weights) {
        acc += Float::with_val(bits, v * w);
    }
    acc
}
