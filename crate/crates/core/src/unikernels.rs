//! Universal limit kernels (sine, Bessel, Airy) and comparisons of the
//! rescaled Christoffel-Darboux kernel against them.

use std::f64::consts::PI;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;

use crate::asym::Side;
use crate::cdkernel::{
    affine_scaled_kernel, bulk_scaled_kernel, edge_scaled_kernel_left, edge_scaled_kernel_right,
};
use crate::error::{Error, Result};
use crate::opseq::RecurrenceTable;
use crate::specfun::SpecFunConfig;

/// Denominator floor of relative errors, so kernel zeros do not blow up.
pub const REL_ERR_FLOOR: f64 = 1e-8;

/// Relative separation below which the Bessel and Airy kernels use their
/// confluent diagonals at the midpoint.
pub const LIMIT_CONFLUENT_THRESHOLD: f64 = 1e-7;

/// The three universal kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitKernelSpec {
    Sine,
    Bessel(f64),
    Airy,
}

impl LimitKernelSpec {
    pub fn eval(&self, u: f64, v: f64) -> Result<f64> {
        match *self {
            LimitKernelSpec::Sine => Ok(sine_kernel(u, v)),
            LimitKernelSpec::Bessel(nu) => bessel_kernel(nu, u, v),
            LimitKernelSpec::Airy => airy_kernel(u, v),
        }
    }
}

/// `sin(pi (u - v)) / (pi (u - v))`, equal to 1 on the diagonal.
pub fn sine_kernel(u: f64, v: f64) -> f64 {
    let d = u - v;
    if d == 0.0 {
        1.0
    } else {
        (PI * d).sin() / (PI * d)
    }
}

fn confluent(x: f64, y: f64) -> bool {
    (x - y).abs() < LIMIT_CONFLUENT_THRESHOLD * x.abs().max(y.abs()).max(1.0)
}

/// Bessel kernel
/// `(J(sqrt x) sqrt y J'(sqrt y) - J(sqrt y) sqrt x J'(sqrt x)) / (2 (x - y))`.
pub fn bessel_kernel(nu: f64, x: f64, y: f64) -> Result<f64> {
    if !(nu > -1.0) {
        return Err(Error::OrderOutOfRange(nu));
    }
    for s in [x, y] {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Domain {
                value: s,
                domain: "x, y > 0",
            });
        }
    }
    let sf = SpecFunConfig::default();
    if confluent(x, y) {
        return bessel_kernel_diagonal(nu, 0.5 * (x + y));
    }
    let (sx, sy) = (x.sqrt(), y.sqrt());
    let (jx, djx) = (sf.bessel_j(nu, sx)?, sf.bessel_j_prime(nu, sx)?);
    let (jy, djy) = (sf.bessel_j(nu, sy)?, sf.bessel_j_prime(nu, sy)?);
    Ok((jx * sy * djy - jy * sx * djx) / (2.0 * (x - y)))
}

/// `(J_nu(s)^2 - J_{nu+1}(s) J_{nu-1}(s)) / 4` at `s = sqrt x`, with
/// `J_{nu-1} = J_nu' + nu J_nu / s` so that orders in `(-1, 0]` work.
pub fn bessel_kernel_diagonal(nu: f64, x: f64) -> Result<f64> {
    let sf = SpecFunConfig::default();
    let s = x.sqrt();
    let j = sf.bessel_j(nu, s)?;
    let dj = sf.bessel_j_prime(nu, s)?;
    let jp1 = sf.bessel_j(nu + 1.0, s)?;
    let jm1 = dj + nu * j / s;
    Ok((j * j - jp1 * jm1) / 4.0)
}

/// Airy kernel `(Ai(x) Ai'(y) - Ai(y) Ai'(x)) / (x - y)`.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    let sf = SpecFunConfig::default();
    if confluent(x, y) {
        let m = 0.5 * (x + y);
        let (a, ap) = sf.airy_ai_pair(m)?;
        return Ok(ap * ap - m * a * a);
    }
    let (ax, apx) = sf.airy_ai_pair(x)?;
    let (ay, apy) = sf.airy_ai_pair(y)?;
    Ok((ax * apy - ay * apx) / (x - y))
}

/// One grid point of a comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub u: f64,
    pub v: f64,
    pub measured: f64,
    pub target: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

impl ErrorRow {
    pub fn new(u: f64, v: f64, measured: f64, target: f64) -> Self {
        let abs_err = (measured - target).abs();
        Self {
            u,
            v,
            measured,
            target,
            abs_err,
            rel_err: abs_err / target.abs().max(REL_ERR_FLOOR),
        }
    }
}

/// Per-point table plus summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub n: usize,
    pub rows: Vec<ErrorRow>,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub max_rel: f64,
    pub mean_rel: f64,
}

impl ErrorReport {
    pub fn from_rows(n: usize, rows: Vec<ErrorRow>) -> Self {
        let len = rows.len().max(1) as f64;
        let max_abs = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
        let max_rel = rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
        let mean_abs = rows.iter().map(|r| r.abs_err).sum::<f64>() / len;
        let mean_rel = rows.iter().map(|r| r.rel_err).sum::<f64>() / len;
        Self {
            n,
            rows,
            max_abs,
            mean_abs,
            max_rel,
            mean_rel,
        }
    }
}

fn check_grid(grid: &[(f64, f64)]) -> Result<()> {
    if grid.is_empty() {
        Err(Error::Domain {
            value: 0.0,
            domain: "nonempty comparison grid",
        })
    } else {
        Ok(())
    }
}

fn compare<M>(n: usize, grid: &[(f64, f64)], target: LimitKernelSpec, measure: M) -> Result<ErrorReport>
where
    M: Fn(f64, f64) -> Result<f64> + Sync,
{
    check_grid(grid)?;
    let rows = grid
        .par_iter()
        .map(|&(u, v)| Ok(ErrorRow::new(u, v, measure(u, v)?, target.eval(u, v)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ErrorReport::from_rows(n, rows))
}

/// Bulk-scaled kernel at `a` against the sine kernel.
pub fn compare_bulk(
    tab: &RecurrenceTable,
    n: usize,
    a: f64,
    grid: &[(f64, f64)],
) -> Result<ErrorReport> {
    compare(n, grid, LimitKernelSpec::Sine, |u, v| {
        bulk_scaled_kernel(tab, n, a, u, v)
    })
}

/// Edge-scaled kernel against the Bessel kernel of order `beta` (right) or
/// `alpha` (left).
pub fn compare_hard_edge(
    tab: &RecurrenceTable,
    n: usize,
    side: Side,
    grid: &[(f64, f64)],
) -> Result<ErrorReport> {
    match side {
        Side::Right => compare(n, grid, LimitKernelSpec::Bessel(tab.params.beta), |u, v| {
            edge_scaled_kernel_right(tab, n, u, v)
        }),
        Side::Left => compare(n, grid, LimitKernelSpec::Bessel(tab.params.alpha), |u, v| {
            edge_scaled_kernel_left(tab, n, u, v)
        }),
    }
}

/// Sign of the `zeta` exponent in the soft-edge distance `s_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SoftEdgeConvention {
    /// `s_n = zeta^(2/3) / (4 n^2)`, matching the edge of the Airy domain
    /// `(2n arccos sqrt x)^2 = zeta^(2/3)`.
    #[default]
    Consistent,
    /// `s_n = zeta^(-2/3) / (4 n^2)`.
    Printed,
}

/// Soft-edge window: points `edge -/+ s_n (1 - u / (m zeta^(2/9)))` with
/// kernel prefactor `s_n / (m zeta^(2/9))`, `m = (3/2)^(2/3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftEdgeScaling {
    pub zeta: Float,
    pub s_n: Float,
    pub step: Float,
}

impl SoftEdgeScaling {
    pub fn new(n: usize, t: f64, bits: u32, convention: SoftEdgeConvention) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::RegimeViolation(
                "soft-edge scaling needs t > 0".to_string(),
            ));
        }
        let n2 = Float::with_val(bits, n as u32).square();
        let zeta = Float::with_val(bits, &n2 * t) * 2u32;
        let expo = match convention {
            SoftEdgeConvention::Consistent => Float::with_val(bits, 2) / 3u32,
            SoftEdgeConvention::Printed => Float::with_val(bits, -2) / 3u32,
        };
        let s_n = Float::with_val(bits, (&zeta).pow(&expo)) / (n2 * 4u32);
        let m = Float::with_val(bits, 1.5).pow(Float::with_val(bits, 2) / 3u32);
        let z29 = Float::with_val(bits, (&zeta).pow(Float::with_val(bits, 2) / 9u32));
        let step = Float::with_val(bits, &s_n / (m * z29));
        Ok(Self { zeta, s_n, step })
    }
}

/// Soft-edge scaled kernel against the Airy kernel.
pub fn compare_soft_edge(
    tab: &RecurrenceTable,
    n: usize,
    side: Side,
    grid: &[(f64, f64)],
    convention: SoftEdgeConvention,
) -> Result<ErrorReport> {
    let bits = tab.bits();
    let sc = SoftEdgeScaling::new(n, tab.params.t, bits, convention)?;
    let (center, step) = match side {
        Side::Right => (Float::with_val(bits, 1 - &sc.s_n), sc.step.clone()),
        Side::Left => (sc.s_n.clone(), -sc.step.clone()),
    };
    compare(n, grid, LimitKernelSpec::Airy, |u, v| {
        affine_scaled_kernel(tab, n, &center, &step, u, v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpquad::PrecisionConfig;
    use crate::specfun::{airy_ai_prime, gamma};
    use crate::weight::WeightParams;
    use proptest::prelude::*;

    #[test]
    fn sine_examples() {
        assert_eq!(sine_kernel(0.3, 0.3), 1.0);
        assert!(sine_kernel(1.5, 0.5).abs() < 1e-15);
        assert!((sine_kernel(0.75, 0.25) - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn bessel_confluent_matches_divided_difference() {
        for &nu in &[0.5, 1.0, 2.5] {
            for &x in &[0.3, 1.0, 4.0, 17.0] {
                let h = 1e-6;
                let diag = bessel_kernel_diagonal(nu, x + 0.5 * h).unwrap();
                let sf = SpecFunConfig::default();
                let (sx, sy) = (x.sqrt(), (x + h).sqrt());
                let num = sf.bessel_j(nu, sx).unwrap() * sy * sf.bessel_j_prime(nu, sy).unwrap()
                    - sf.bessel_j(nu, sy).unwrap() * sx * sf.bessel_j_prime(nu, sx).unwrap();
                let dd = num / (2.0 * -h);
                assert!((dd - diag).abs() <= 1e-6 * diag.abs(), "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn bessel_confluent_against_extended_precision_difference() {
        // |x - y| = 1e-8 divided difference with MPFR J_1.
        let x = 2.0f64;
        let h = Float::with_val(256, 1e-8);
        let xs = Float::with_val(256, x);
        let ys = Float::with_val(256, &xs + &h);
        let j = |s: &Float, n: i32| Float::with_val(256, s.sqrt_ref()).jn(n);
        let dj = |s: &Float| (j(s, 0) - j(s, 2)) / 2u32;
        let num = j(&xs, 1) * Float::with_val(256, ys.sqrt_ref()) * dj(&ys)
            - j(&ys, 1) * Float::with_val(256, xs.sqrt_ref()) * dj(&xs);
        let dd = (num / (h * -2i32)).to_f64();
        let diag = bessel_kernel_diagonal(1.0, x + 0.5e-8).unwrap();
        assert!((dd - diag).abs() < 1e-12 * diag.abs());
        assert_eq!(bessel_kernel(1.0, x, x + 1e-9).unwrap(), bessel_kernel_diagonal(1.0, x + 0.5e-9).unwrap());
    }

    #[test]
    fn bessel_kernel_direct_value() {
        let x = Float::with_val(256, 1);
        let y = Float::with_val(256, 2);
        let j = |s: &Float, n: i32| Float::with_val(256, s.sqrt_ref()).jn(n);
        let dj = |s: &Float| (j(s, 0) - j(s, 2)) / 2u32;
        let num = j(&x, 1) * Float::with_val(256, y.sqrt_ref()) * dj(&y)
            - j(&y, 1) * Float::with_val(256, x.sqrt_ref()) * dj(&x);
        let exact = (num / -2i32).to_f64();
        assert!((bessel_kernel(1.0, 1.0, 2.0).unwrap() - exact).abs() < 1e-14 * exact.abs());
        assert!(bessel_kernel(-1.0, 1.0, 2.0).is_err());
        assert!(bessel_kernel(1.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn airy_kernel_values() {
        let third = Float::with_val(256, 1) / 3u32;
        let c2 = Float::with_val(256, 3).pow(-third.clone()) / gamma(&third).unwrap();
        let expect = (c2.clone() * &c2).to_f64();
        assert!((airy_kernel(0.0, 0.0).unwrap() - expect).abs() < 1e-15);
        assert!((airy_ai_prime(0.0).powi(2) - expect).abs() < 1e-15);
        let ai = |x: f64| Float::with_val(256, x).ai();
        let h = Float::with_val(256, 1e-30);
        let aip = |x: f64| {
            let xp = Float::with_val(256, x) + &h;
            let xm = Float::with_val(256, x) - &h;
            (xp.ai() - xm.ai()) / (h.clone() * 2u32)
        };
        let exact = ((ai(-1.0) * aip(1.0) - ai(1.0) * aip(-1.0)) / -2i32).to_f64();
        assert!((airy_kernel(-1.0, 1.0).unwrap() - exact).abs() < 1e-14 * exact.abs());
    }

    #[test]
    fn report_summaries_and_floor() {
        let rows = vec![ErrorRow::new(0.0, 0.0, 1.1, 1.0), ErrorRow::new(1.0, 0.0, 1e-9, 0.0)];
        let r = ErrorReport::from_rows(4, rows);
        assert!((r.max_abs - 0.1).abs() < 1e-15);
        assert!((r.rows[1].rel_err - 0.1).abs() < 1e-15);
        assert!((r.mean_abs - (0.1 + 1e-9) / 2.0).abs() < 1e-15);
        assert!((r.max_rel - 0.1).abs() < 1e-12);
    }

    fn table(alpha: f64, beta: f64, t: f64, n: usize) -> RecurrenceTable {
        let p = WeightParams::new(alpha, beta, t).unwrap();
        RecurrenceTable::compute(&p, n, PrecisionConfig::default()).unwrap().0
    }

    #[test]
    fn bulk_comparison_is_point_symmetric_for_symmetric_weight() {
        let tab = table(1.0, 1.0, 0.01, 16);
        let grid = [(0.3, -0.4), (1.0, 0.2)];
        let neg: Vec<_> = grid.iter().map(|&(u, v)| (-u, -v)).collect();
        let a = compare_bulk(&tab, 16, 0.5, &grid).unwrap();
        let b = compare_bulk(&tab, 16, 0.5, &neg).unwrap();
        for (r, s) in a.rows.iter().zip(&b.rows) {
            assert!((r.abs_err - s.abs_err).abs() < 1e-12);
        }
        let d = compare_bulk(&tab, 16, 0.5, &[(0.0, 0.0)]).unwrap();
        let dens = crate::cdkernel::kernel_diagonal(&tab, 16, 0.5).unwrap() * PI * 0.5 / 16.0;
        assert!((d.max_abs - (dens - 1.0).abs()).abs() < 1e-13);
        assert!(compare_bulk(&tab, 16, 0.5, &[]).is_err());
    }

    #[test]
    fn hard_edge_sides_agree_for_symmetric_weight() {
        let tab = table(1.0, 1.0, 0.0, 24);
        let grid = [(1.0, 1.0), (1.0, 2.0), (2.0, 3.0)];
        let r = compare_hard_edge(&tab, 24, Side::Right, &grid).unwrap();
        let l = compare_hard_edge(&tab, 24, Side::Left, &grid).unwrap();
        for (a, b) in r.rows.iter().zip(&l.rows) {
            assert!((a.measured - b.measured).abs() < 1e-12 * a.measured.abs());
        }
        // O(1/n) lag from the effective degree n + (alpha + beta + 1) / 2.
        assert!(r.max_rel < 0.2, "{}", r.max_rel);
    }

    #[test]
    fn soft_edge_scaling_conventions() {
        let bits = 256;
        let sc = SoftEdgeScaling::new(64, 100.0 / 8192.0, bits, SoftEdgeConvention::Consistent).unwrap();
        assert!((sc.zeta.to_f64() - 100.0).abs() < 1e-12);
        let z = 100f64;
        let m = 1.5f64.powf(2.0 / 3.0);
        assert!((sc.s_n.to_f64() - z.powf(2.0 / 3.0) / 16384.0).abs() < 1e-18);
        let expect = z.powf(4.0 / 9.0) / (m * 16384.0);
        assert!((sc.step.to_f64() - expect).abs() < 1e-15 * expect);
        assert!(SoftEdgeScaling::new(64, 0.0, bits, SoftEdgeConvention::Consistent).is_err());
    }

    proptest! {
        #[test]
        fn kernels_are_symmetric(u in 0.05f64..6.0, v in 0.05f64..6.0) {
            prop_assert!((sine_kernel(u, v) - sine_kernel(v, u)).abs() == 0.0);
            let a = bessel_kernel(1.5, u, v).unwrap();
            let b = bessel_kernel(1.5, v, u).unwrap();
            prop_assert!((a - b).abs() <= 1e-14 * a.abs().max(1e-10));
            let a = airy_kernel(u - 3.0, v - 3.0).unwrap();
            let b = airy_kernel(v - 3.0, u - 3.0).unwrap();
            prop_assert!((a - b).abs() <= 1e-14 * a.abs().max(1e-10));
        }

        #[test]
        fn diagonals_are_nonnegative(x in 0.01f64..30.0, nu in 0.0f64..4.0) {
            prop_assert!(bessel_kernel_diagonal(nu, x).unwrap() >= 0.0);
            prop_assert!(airy_kernel(x - 10.0, x - 10.0).unwrap() >= 0.0);
        }

        #[test]
        fn sine_depends_on_difference_only(k in -64i32..64, j in -64i32..64, c in -64i32..64) {
            let (u, v, s) = (k as f64 / 16.0, j as f64 / 16.0, c as f64 / 16.0);
            prop_assert_eq!(sine_kernel(u + s, v + s), sine_kernel(u, v));
        }
    }
}
