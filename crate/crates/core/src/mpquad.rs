//! Extended-precision composite Gauss-Legendre quadrature on `[0, 1]`,
//! with panels graded geometrically toward both endpoints.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::weight::{weight_mp, WeightParams};

/// Working precision of the multiprecision pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionConfig {
    pub bits: u32,
}

impl PrecisionConfig {
    pub const MIN_BITS: u32 = 128;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::InvalidPrecision(bits));
        }
        Ok(Self { bits })
    }

    /// Default tolerance for refinement checks, `10^(-bits/4)`.
    pub fn refinement_tol(&self) -> f64 {
        10f64.powf(-(self.bits as f64) / 4.0)
    }

    pub fn float<T>(&self, val: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits, val)
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self { bits: 256 }
    }
}

/// Levels `L`, points per panel `m` and grading ratio `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelSpec {
    pub levels: usize,
    pub points: usize,
    pub ratio: f64,
}

impl PanelSpec {
    pub const DEFAULT_RATIO: f64 = 0.25;

    /// Points per panel able to resolve `pi_n^2 w` for `n <= degree` to the
    /// working precision; levels are left for [`select_rule`].
    ///
    /// Each graded panel sees the nearest endpoint singularity through a
    /// Bernstein ellipse of parameter `(1 + sqrt r) / (1 - sqrt r)`, so the
    /// smooth part needs `bits ln 2 / (2 ln rho)` points on top of the degree.
    pub fn points_for_degree(degree: usize, ratio: f64, prec: PrecisionConfig) -> usize {
        let s = ratio.sqrt();
        let rho = (1.0 + s) / (1.0 - s);
        let smooth = (prec.bits as f64 * std::f64::consts::LN_2 / (2.0 * rho.ln())).ceil() as usize;
        (degree + smooth + 8).max(24)
    }

    pub fn node_count(&self) -> usize {
        2 * self.levels * self.points
    }
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
    pub spec: PanelSpec,
    pub prec: PrecisionConfig,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The same grading with twice the points on every panel.
    pub fn refined(&self) -> Result<QuadratureRule> {
        build_rule(
            self.spec.levels,
            2 * self.spec.points,
            self.spec.ratio,
            self.prec,
        )
    }
}

fn legendre_with_derivative(m: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p_prev = Float::with_val(prec, 1);
    let mut p = x.clone();
    for k in 1..m {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let mut next = Float::with_val(prec, x * &p);
        next *= (2 * k + 1) as u32;
        next -= Float::with_val(prec, &p_prev * k as u32);
        next /= (k + 1) as u32;
        p_prev = std::mem::replace(&mut p, next);
    }
    // P'_m = m (x P_m - P_{m-1}) / (x^2 - 1)
    let mut dp = Float::with_val(prec, x * &p);
    dp -= &p_prev;
    dp *= m as u32;
    let mut denom = Float::with_val(prec, x.square_ref());
    denom -= 1;
    dp /= &denom;
    (p, dp)
}

/// Nodes and weights of the `m`-point Gauss-Legendre rule on `[-1, 1]`, ascending.
pub fn gauss_legendre(m: usize, prec: PrecisionConfig) -> Result<(Vec<Float>, Vec<Float>)> {
    if m == 0 {
        return Err(Error::InvalidGrading("m must be at least 1".into()));
    }
    let bits = prec.bits;
    if m == 1 {
        return Ok((vec![Float::new(bits)], vec![Float::with_val(bits, 2)]));
    }
    let half = m / 2;
    let mut pos_nodes = Vec::with_capacity(half);
    let mut pos_weights = Vec::with_capacity(half);
    let eps = Float::with_val(bits, Float::i_exp(1, 4 - bits as i32));
    for i in 1..=half {
        let theta = std::f64::consts::PI * (i as f64 - 0.25) / (m as f64 + 0.5);
        let mut x = Float::with_val(bits, theta.cos());
        let mut converged = false;
        let mut last_step = f64::INFINITY;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(m, &x);
            let step = Float::with_val(bits, &p / &dp);
            x -= &step;
            let step_abs = step.clone().abs();
            if step_abs <= eps || step.is_zero() {
                converged = true;
                break;
            }
            // Once in the rounding floor the step stops shrinking.
            let s = step_abs.to_f64();
            if s < 1e-30 && s >= last_step {
                converged = true;
                break;
            }
            last_step = s;
        }
        if !converged {
            return Err(Error::ConvergenceFailure { m });
        }
        let (_, dp) = legendre_with_derivative(m, &x);
        let mut w = Float::with_val(bits, x.square_ref());
        w = 1 - w;
        w *= Float::with_val(bits, dp.square_ref());
        let w = Float::with_val(bits, 2 / w);
        pos_nodes.push(x);
        pos_weights.push(w);
    }
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (x, w) in pos_nodes.iter().zip(&pos_weights) {
        nodes.push(Float::with_val(bits, -x));
        weights.push(w.clone());
    }
    if m % 2 == 1 {
        let zero = Float::new(bits);
        let (_, dp) = legendre_with_derivative(m, &zero);
        nodes.push(zero);
        weights.push(Float::with_val(bits, 2 / Float::with_val(bits, dp.square_ref())));
    }
    for (x, w) in pos_nodes.into_iter().zip(pos_weights).rev() {
        nodes.push(x);
        weights.push(w);
    }
    Ok((nodes, weights))
}

/// Breakpoints of the left half, `0, r^(L-1)/2, ..., r/2, 1/2`.
fn left_breakpoints(levels: usize, ratio: &Float) -> Vec<Float> {
    let prec = ratio.prec();
    let mut pts = Vec::with_capacity(levels + 1);
    pts.push(Float::new(prec));
    for k in (0..levels).rev() {
        let mut b = Float::with_val(prec, ratio.pow(k as u32));
        b /= 2;
        pts.push(b);
    }
    pts
}

/// Composite rule with `2 L` panels and `m` Gauss points on each.
pub fn build_rule(
    levels: usize,
    points: usize,
    ratio: f64,
    prec: PrecisionConfig,
) -> Result<QuadratureRule> {
    if levels < 1 {
        return Err(Error::InvalidGrading(format!("L = {levels} < 1")));
    }
    if points < 2 {
        return Err(Error::InvalidGrading(format!("m = {points} < 2")));
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidGrading(format!("r = {ratio} not in (0, 1)")));
    }
    let bits = prec.bits;
    let (gx, gw) = gauss_legendre(points, prec)?;
    let r = Float::with_val(bits, ratio);
    let bps = left_breakpoints(levels, &r);

    let mut left_nodes = Vec::with_capacity(levels * points);
    let mut left_weights = Vec::with_capacity(levels * points);
    for pair in bps.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let mut half_width = Float::with_val(bits, b - a);
        half_width /= 2;
        let mut mid = Float::with_val(bits, a + b);
        mid /= 2;
        for (x, w) in gx.iter().zip(&gw) {
            let mut node = Float::with_val(bits, x * &half_width);
            node += &mid;
            left_nodes.push(node);
            left_weights.push(Float::with_val(bits, w * &half_width));
        }
    }
    let mut nodes = Vec::with_capacity(2 * left_nodes.len());
    let mut weights = Vec::with_capacity(2 * left_nodes.len());
    nodes.extend(left_nodes.iter().cloned());
    weights.extend(left_weights.iter().cloned());
    for (x, w) in left_nodes.iter().zip(&left_weights).rev() {
        nodes.push(Float::with_val(bits, 1 - x));
        weights.push(w.clone());
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        spec: PanelSpec {
            levels,
            points,
            ratio,
        },
        prec,
    })
}

/// `sum w_i f(x_i)`; nodes are evaluated in parallel and summed in node order.
pub fn integrate<F>(f: F, rule: &QuadratureRule) -> Result<Float>
where
    F: Fn(&Float) -> Float + Sync,
{
    let values: Vec<Float> = rule.nodes.par_iter().map(&f).collect();
    let mut acc = Float::new(rule.prec.bits);
    for ((v, w), x) in values.iter().zip(&rule.weights).zip(&rule.nodes) {
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { node: x.to_f64() });
        }
        acc += Float::with_val(rule.prec.bits, v * w);
    }
    Ok(acc)
}

/// Discrete measure `rule.weights[i] * w(nodes[i])`.
pub fn discretize(p: &WeightParams, rule: &QuadratureRule) -> Result<Vec<Float>> {
    rule.nodes
        .par_iter()
        .zip(&rule.weights)
        .map(|(x, w)| weight_mp(x, p).map(|wx| wx * w))
        .collect()
}

pub fn total_mass(p: &WeightParams, rule: &QuadratureRule) -> Result<Float> {
    let mut acc = Float::new(rule.prec.bits);
    for m in discretize(p, rule)? {
        acc += m;
    }
    Ok(acc)
}

/// `|int w (L levels) - int w (2L levels)|` relative to the mass.
pub fn refinement_delta(p: &WeightParams, spec: PanelSpec, prec: PrecisionConfig) -> Result<f64> {
    let coarse = build_rule(spec.levels, spec.points, spec.ratio, prec)?;
    let fine = build_rule(2 * spec.levels, spec.points, spec.ratio, prec)?;
    Ok(mass_delta(p, &coarse, &fine)?.0)
}

fn mass_delta(
    p: &WeightParams,
    coarse: &QuadratureRule,
    fine: &QuadratureRule,
) -> Result<(f64, Float)> {
    let mc = total_mass(p, coarse)?;
    let mf = total_mass(p, fine)?;
    let delta = Float::with_val(coarse.prec.bits, &mc - &mf).abs() / &mf;
    Ok((delta.to_f64(), mf))
}

pub const MAX_LEVELS: usize = 512;

/// Doubles the level count from 4 until the relative change in `int w`
/// drops below `tol`; returns the coarser accepted rule and its delta.
pub fn select_rule(
    p: &WeightParams,
    points: usize,
    ratio: f64,
    prec: PrecisionConfig,
    tol: f64,
) -> Result<(QuadratureRule, f64)> {
    let mut levels = 4;
    let mut coarse = build_rule(levels, points, ratio, prec)?;
    loop {
        let fine = build_rule(2 * levels, points, ratio, prec)?;
        let (delta, _) = mass_delta(p, &coarse, &fine)?;
        if delta < tol {
            return Ok((coarse, delta));
        }
        levels *= 2;
        if levels > MAX_LEVELS {
            return Err(Error::InvalidGrading(format!(
                "refinement delta {delta:e} still above {tol:e} at {MAX_LEVELS} levels"
            )));
        }
        coarse = fine;
    }
}
