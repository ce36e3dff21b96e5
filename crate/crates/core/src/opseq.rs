//! Monic orthogonal polynomials of the two-sided Pollaczek-Jacobi weight,
//! computed by the discretized Stieltjes procedure.
//!
//! The recurrence is `x p_n = p_{n+1} + a_n p_n + b_n p_{n-1}` with
//! `b_n = h_n / h_{n-1}`; by convention `b_0 = h_0`, the total mass.

use std::fmt::Write as _;

use num_complex::Complex64;
use rug::{Assign, Float};

use crate::error::{Error, Result};
use crate::mpquad::{discretize, select_rule, PanelSpec, PrecisionConfig, QuadratureRule};
use crate::weight::{validate_params, WeightParams};

/// Nodes required per unit of degree before a table is accepted.
pub const NODES_PER_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    pub params: WeightParams,
    /// Maximum degree `N`; `a`, `b` and `h` hold entries `0..=N`.
    pub n_max: usize,
    pub prec: PrecisionConfig,
    pub a: Vec<Float>,
    pub b: Vec<Float>,
    pub h: Vec<Float>,
}

/// `p_n(x)` and `p_n'(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyEval {
    pub n: usize,
    pub x: Float,
    pub value: Float,
    pub derivative: Float,
}

/// `p_n, p_{n-1}` and their derivatives at one point.
#[derive(Debug, Clone)]
pub(crate) struct Forward {
    pub p: Float,
    pub p_prev: Float,
    pub dp: Float,
    pub dp_prev: Float,
}

impl RecurrenceTable {
    /// Builds the rule automatically (see [`auto_rule`]) and runs the Stieltjes procedure.
    pub fn compute(
        p: &WeightParams,
        n_max: usize,
        prec: PrecisionConfig,
    ) -> Result<(RecurrenceTable, QuadratureRule)> {
        let rule = auto_rule(p, n_max, prec)?;
        let table = stieltjes(p, n_max, &rule)?;
        Ok((table, rule))
    }

    pub fn bits(&self) -> u32 {
        self.prec.bits
    }

    /// `gamma_n = h_n^(-1/2)`, the leading coefficient of the orthonormal polynomial.
    pub fn gamma(&self, n: usize) -> Result<Float> {
        self.check_degree(n)?;
        Ok(Float::with_val(self.bits(), self.h[n].recip_sqrt_ref()))
    }

    /// `gamma_n^2 = 1 / h_n`.
    pub fn gamma_sq(&self, n: usize) -> Result<Float> {
        self.check_degree(n)?;
        Ok(Float::with_val(self.bits(), self.h[n].recip_ref()))
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::DegreeOutOfRange { n, max: self.n_max });
        }
        Ok(())
    }

    /// Forward recurrence for `p_n`, `p_{n-1}` and derivatives at `x`.
    pub(crate) fn forward(&self, n: usize, x: &Float) -> Result<Forward> {
        self.check_degree(n)?;
        let bits = self.bits();
        let mut p_prev = Float::new(bits);
        let mut p = Float::with_val(bits, 1);
        let mut dp_prev = Float::new(bits);
        let mut dp = Float::new(bits);
        let mut shift = Float::new(bits);
        let mut tmp = Float::new(bits);
        for k in 0..n {
            shift.assign(x - &self.a[k]);
            // p'_{k+1} = p_k + (x - a_k) p'_k - b_k p'_{k-1}
            tmp.assign(&shift * &dp);
            tmp += &p;
            if k > 0 {
                dp_prev *= &self.b[k];
                tmp -= &dp_prev;
            }
            std::mem::swap(&mut dp_prev, &mut dp);
            std::mem::swap(&mut dp, &mut tmp);
            // p_{k+1} = (x - a_k) p_k - b_k p_{k-1}
            tmp.assign(&shift * &p);
            if k > 0 {
                p_prev *= &self.b[k];
                tmp -= &p_prev;
            }
            std::mem::swap(&mut p_prev, &mut p);
            std::mem::swap(&mut p, &mut tmp);
        }
        Ok(Forward {
            p,
            p_prev,
            dp,
            dp_prev,
        })
    }

    /// Serializes to the versioned `.rct` text format.
    pub fn to_rct(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "pjop-rct v1 {} {} {} {} {}",
            self.params.alpha,
            self.params.beta,
            self.params.t,
            self.n_max,
            self.bits()
        );
        for n in 0..=self.n_max {
            let _ = writeln!(
                out,
                "{} {} {} {}",
                n,
                self.a[n].to_string_radix(10, None),
                self.b[n].to_string_radix(10, None),
                self.h[n].to_string_radix(10, None)
            );
        }
        out
    }

    pub fn from_rct(text: &str) -> Result<RecurrenceTable> {
        let bad = |msg: String| Error::TableFormat(msg);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 7 || fields[0] != "pjop-rct" {
            return Err(bad(format!("bad header `{header}`")));
        }
        if fields[1] != "v1" {
            return Err(bad(format!("unsupported version `{}`", fields[1])));
        }
        let num = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| bad(format!("bad header number `{s}`")))
        };
        let params = validate_params(num(fields[2])?, num(fields[3])?, num(fields[4])?)?;
        let n_max: usize = fields[5]
            .parse()
            .map_err(|_| bad(format!("bad degree `{}`", fields[5])))?;
        let bits: u32 = fields[6]
            .parse()
            .map_err(|_| bad(format!("bad precision `{}`", fields[6])))?;
        let prec = PrecisionConfig::new(bits)?;
        let parse_float = |s: &str| -> Result<Float> {
            Float::parse(s)
                .map(|v| Float::with_val(bits, v))
                .map_err(|_| bad(format!("bad number `{s}`")))
        };
        let mut a = Vec::with_capacity(n_max + 1);
        let mut b = Vec::with_capacity(n_max + 1);
        let mut h = Vec::with_capacity(n_max + 1);
        for (expected, line) in lines.enumerate() {
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 4 {
                return Err(bad(format!("row {expected}: expected 4 columns")));
            }
            if cols[0].parse::<usize>().ok() != Some(expected) {
                return Err(bad(format!("row {expected}: index `{}`", cols[0])));
            }
            a.push(parse_float(cols[1])?);
            b.push(parse_float(cols[2])?);
            h.push(parse_float(cols[3])?);
        }
        if a.len() != n_max + 1 {
            return Err(bad(format!("expected {} rows, found {}", n_max + 1, a.len())));
        }
        Ok(RecurrenceTable {
            params,
            n_max,
            prec,
            a,
            b,
            h,
        })
    }
}

/// Quadrature rule able to carry the Stieltjes procedure to degree `n_max`:
/// precision-aware points per panel (see [`PanelSpec::points_for_degree`]),
/// levels doubled until the mass changes by less than `10^(-bits/4)`, and
/// at least `8 n_max` nodes.
pub fn auto_rule(p: &WeightParams, n_max: usize, prec: PrecisionConfig) -> Result<QuadratureRule> {
    let points = PanelSpec::points_for_degree(n_max, PanelSpec::DEFAULT_RATIO, prec);
    let (rule, _) = select_rule(p, points, PanelSpec::DEFAULT_RATIO, prec, prec.refinement_tol())?;
    check_resolution(&rule, n_max)?;
    Ok(rule)
}

fn check_resolution(rule: &QuadratureRule, n_max: usize) -> Result<()> {
    let required = NODES_PER_DEGREE * n_max;
    if rule.len() < required {
        return Err(Error::InsufficientQuadrature {
            nodes: rule.len(),
            required,
            degree: n_max,
        });
    }
    Ok(())
}

/// Closed-form recurrence of the monic shifted Jacobi polynomials for
/// `x^alpha (1-x)^beta` on `[0, 1]`, entries `0..=n_max`, with
/// `b_0 = B(alpha + 1, beta + 1)`.
pub fn jacobi_recurrence(
    alpha: f64,
    beta: f64,
    n_max: usize,
    prec: PrecisionConfig,
) -> Result<(Vec<Float>, Vec<Float>)> {
    validate_params(alpha, beta, 0.0)?;
    let bits = prec.bits;
    // On [-1, 1] the weight is (1 - y)^beta (1 + y)^alpha.
    let ja = Float::with_val(bits, beta);
    let jb = Float::with_val(bits, alpha);
    let s = Float::with_val(bits, &ja + &jb);
    let d2 = Float::with_val(bits, jb.square_ref()) - Float::with_val(bits, ja.square_ref());
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let nf = Float::with_val(bits, n as u32);
        let k = Float::with_val(bits, &nf * 2u32) + &s;
        let alpha_n = if n == 0 {
            Float::with_val(bits, &jb - &ja) / Float::with_val(bits, &s + 2u32)
        } else {
            Float::with_val(bits, &d2 / &k) / Float::with_val(bits, &k + 2u32)
        };
        a.push((alpha_n + 1u32) / 2u32);
        if n == 0 {
            let g = |x: Float| crate::specfun::gamma(&x);
            let num = g(Float::with_val(bits, &jb + 1u32))? * g(Float::with_val(bits, &ja + 1u32))?;
            b.push(num / g(Float::with_val(bits, &s + 2u32))?);
        } else {
            let mut num = Float::with_val(bits, &nf * 4u32);
            num *= Float::with_val(bits, &nf + &ja);
            num *= Float::with_val(bits, &nf + &jb);
            num *= Float::with_val(bits, &nf + &s);
            let mut den = Float::with_val(bits, k.square_ref());
            den *= Float::with_val(bits, &k + 1u32);
            den *= Float::with_val(bits, &k - 1u32);
            b.push(num / den / 4u32);
        }
    }
    Ok((a, b))
}

/// Discretized Stieltjes procedure up to degree `n_max`.
pub fn stieltjes(p: &WeightParams, n_max: usize, rule: &QuadratureRule) -> Result<RecurrenceTable> {
    if n_max < 1 {
        return Err(Error::DegreeOutOfRange { n: n_max, max: 0 });
    }
    check_resolution(rule, n_max)?;
    let bits = rule.prec.bits;
    let mu = discretize(p, rule)?;
    let x = &rule.nodes;
    let len = x.len();

    let mut p_prev: Vec<Float> = (0..len).map(|_| Float::new(bits)).collect();
    let mut p_cur: Vec<Float> = (0..len).map(|_| Float::with_val(bits, 1)).collect();
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max + 1);
    let mut h: Vec<Float> = Vec::with_capacity(n_max + 1);

    let mut term = Float::new(bits);
    let mut tmp = Float::new(bits);
    for n in 0..=n_max {
        let mut hn = Float::new(bits);
        let mut xn = Float::new(bits);
        for i in 0..len {
            term.assign(p_cur[i].square_ref());
            term *= &mu[i];
            hn += &term;
            term *= &x[i];
            xn += &term;
        }
        if hn <= 0 || !hn.is_finite() {
            return Err(Error::LostPositivity { n });
        }
        let an = Float::with_val(bits, &xn / &hn);
        let bn = if n == 0 {
            hn.clone()
        } else {
            Float::with_val(bits, &hn / &h[n - 1])
        };
        if n < n_max {
            for i in 0..len {
                tmp.assign(&x[i] - &an);
                tmp *= &p_cur[i];
                if n > 0 {
                    p_prev[i] *= &bn;
                    tmp -= &p_prev[i];
                }
                std::mem::swap(&mut p_prev[i], &mut p_cur[i]);
                std::mem::swap(&mut p_cur[i], &mut tmp);
            }
        }
        a.push(an);
        b.push(bn);
        h.push(hn);
    }
    Ok(RecurrenceTable {
        params: *p,
        n_max,
        prec: rule.prec,
        a,
        b,
        h,
    })
}

/// `p_n(x)` and `p_n'(x)` at an extended-precision point.
pub fn eval_monic_mp(tab: &RecurrenceTable, n: usize, x: &Float) -> Result<PolyEval> {
    let x = Float::with_val(tab.bits(), x);
    let fw = tab.forward(n, &x)?;
    Ok(PolyEval {
        n,
        x,
        value: fw.p,
        derivative: fw.dp,
    })
}

pub fn eval_monic(tab: &RecurrenceTable, n: usize, x: f64) -> Result<PolyEval> {
    eval_monic_mp(tab, n, &Float::with_val(tab.bits(), x))
}

/// `p_n(z)` for complex `z`, run in extended precision and rounded at the end.
pub fn eval_monic_complex(tab: &RecurrenceTable, n: usize, z: Complex64) -> Result<Complex64> {
    tab.check_degree(n)?;
    let bits = tab.bits();
    let zr = Float::with_val(bits, z.re);
    let zi = Float::with_val(bits, z.im);
    let (mut pr, mut pi) = (Float::with_val(bits, 1), Float::new(bits));
    let (mut qr, mut qi) = (Float::new(bits), Float::new(bits));
    let mut sr = Float::new(bits);
    let mut nr = Float::new(bits);
    let mut ni = Float::new(bits);
    let mut tmp = Float::new(bits);
    for k in 0..n {
        sr.assign(&zr - &tab.a[k]);
        // (sr + i zi)(pr + i pi)
        nr.assign(&sr * &pr);
        tmp.assign(&zi * &pi);
        nr -= &tmp;
        ni.assign(&sr * &pi);
        tmp.assign(&zi * &pr);
        ni += &tmp;
        if k > 0 {
            qr *= &tab.b[k];
            qi *= &tab.b[k];
            nr -= &qr;
            ni -= &qi;
        }
        std::mem::swap(&mut qr, &mut pr);
        std::mem::swap(&mut qi, &mut pi);
        std::mem::swap(&mut pr, &mut nr);
        std::mem::swap(&mut pi, &mut ni);
    }
    Ok(Complex64::new(pr.to_f64(), pi.to_f64()))
}

/// Zeros of `p_n` in ascending order, bracketed on a grid uniform in
/// `arccos sqrt(x)` and refined by bisection to `f64` resolution.
pub fn zeros(tab: &RecurrenceTable, n: usize) -> Result<Vec<f64>> {
    tab.check_degree(n)?;
    let bits = tab.bits();
    let sign = |theta: f64| -> Result<bool> {
        let x = theta.cos().powi(2);
        Ok(tab.forward(n, &Float::with_val(bits, x))?.p.is_sign_positive())
    };
    let cells = 32 * n.max(1);
    let h = std::f64::consts::FRAC_PI_2 / cells as f64;
    let mut out = Vec::with_capacity(n);
    let mut lo = h * 1e-3;
    let mut s_lo = sign(lo)?;
    for i in 1..=cells {
        let hi = if i == cells {
            std::f64::consts::FRAC_PI_2 - h * 1e-3
        } else {
            h * i as f64
        };
        let s_hi = sign(hi)?;
        if s_hi != s_lo {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if sign(m)? == s_lo {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push((0.5 * (a + b)).cos().powi(2));
        }
        lo = hi;
        s_lo = s_hi;
    }
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite zeros"));
    Ok(out)
}

/// `p_0 .. p_{max_deg}` at every node of the rule.
fn values_on_nodes(tab: &RecurrenceTable, max_deg: usize, rule: &QuadratureRule) -> Vec<Vec<Float>> {
    let bits = tab.bits();
    let mut rows: Vec<Vec<Float>> = Vec::with_capacity(max_deg + 1);
    rows.push(rule.nodes.iter().map(|_| Float::with_val(bits, 1)).collect());
    for k in 0..max_deg {
        let next: Vec<Float> = rule
            .nodes
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut v = Float::with_val(bits, x - &tab.a[k]);
                v *= &rows[k][i];
                if k > 0 {
                    v -= Float::with_val(bits, &rows[k - 1][i] * &tab.b[k]);
                }
                v
            })
            .collect();
        rows.push(next);
    }
    rows
}

/// `int p_i p_j w dx - h_i delta_ij` on the given rule.
pub fn orthogonality_residual(
    tab: &RecurrenceTable,
    i: usize,
    j: usize,
    rule: &QuadratureRule,
) -> Result<Float> {
    tab.check_degree(i)?;
    tab.check_degree(j)?;
    let g = gram_residuals(tab, i.max(j), rule)?;
    Ok(g[i][j].clone())
}

/// Full matrix of orthogonality residuals for degrees `0..=max_deg`.
pub fn gram_residuals(
    tab: &RecurrenceTable,
    max_deg: usize,
    rule: &QuadratureRule,
) -> Result<Vec<Vec<Float>>> {
    tab.check_degree(max_deg)?;
    let bits = tab.bits();
    let mu = discretize(&tab.params, rule)?;
    let vals = values_on_nodes(tab, max_deg, rule);
    let mut g = vec![vec![Float::new(bits); max_deg + 1]; max_deg + 1];
    let mut term = Float::new(bits);
    for i in 0..=max_deg {
        let weighted: Vec<Float> = vals[i]
            .iter()
            .zip(&mu)
            .map(|(v, m)| Float::with_val(bits, v * m))
            .collect();
        for j in i..=max_deg {
            let mut s = Float::new(bits);
            for (wv, v) in weighted.iter().zip(&vals[j]) {
                term.assign(wv * v);
                s += &term;
            }
            if i == j {
                s -= &tab.h[i];
            }
            g[j][i] = s.clone();
            g[i][j] = s;
        }
    }
    Ok(g)
}

/// `max_{i != j} |residual_ij| / sqrt(h_i h_j)` over degrees `0..=max_deg`.
#[allow(clippy::needless_range_loop)]
pub fn max_normalized_offdiagonal(
    tab: &RecurrenceTable,
    max_deg: usize,
    rule: &QuadratureRule,
) -> Result<f64> {
    let g = gram_residuals(tab, max_deg, rule)?;
    let bits = tab.bits();
    let mut worst = 0.0f64;
    for i in 0..=max_deg {
        for j in 0..i {
            let norm = Float::with_val(bits, &tab.h[i] * &tab.h[j]).sqrt();
            let r = Float::with_val(bits, &g[i][j] / &norm).abs().to_f64();
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpquad::build_rule;

    const P256: PrecisionConfig = PrecisionConfig { bits: 256 };

    fn params(a: f64, b: f64, t: f64) -> WeightParams {
        validate_params(a, b, t).unwrap()
    }

    fn jacobi11_b(n: usize) -> f64 {
        let n = n as f64;
        0.25 * n * (n + 2.0) / ((2.0 * n + 1.0) * (2.0 * n + 3.0))
    }

    #[test]
    fn symmetric_jacobi_coefficients() {
        let p = params(1.0, 1.0, 0.0);
        let (tab, _) = RecurrenceTable::compute(&p, 12, P256).unwrap();
        let half = Float::with_val(256, 0.5);
        for n in 0..=12 {
            let d = Float::with_val(256, &tab.a[n] - &half).abs().to_f64();
            assert!(d < 1e-60, "a_{n} off by {d:e}");
        }
        let h0 = tab.h[0].to_f64();
        assert!((h0 - 1.0 / 6.0).abs() < 1e-16);
        for n in 1..=12 {
            let bn = tab.b[n].to_f64();
            assert!((bn - jacobi11_b(n)).abs() < 1e-15 * bn, "b_{n}");
        }
    }

    #[test]
    fn closed_form_jacobi_matches_stieltjes() {
        for (a, b) in [(1.0, 1.0), (1.5, 0.5), (0.3, 2.7)] {
            let (tab, _) = RecurrenceTable::compute(&params(a, b, 0.0), 16, P256).unwrap();
            let (ja, jb) = jacobi_recurrence(a, b, 16, P256).unwrap();
            for n in 0..=16 {
                let da = Float::with_val(256, &tab.a[n] - &ja[n]).abs().to_f64();
                let db = (Float::with_val(256, &tab.b[n] - &jb[n]) / &jb[n]).abs().to_f64();
                assert!(da < 1e-60 && db < 1e-60, "a={a} b={b} n={n} da={da:e} db={db:e}");
            }
        }
        let (_, jb) = jacobi_recurrence(1.0, 1.0, 5, P256).unwrap();
        assert!((jb[3].to_f64() - jacobi11_b(3)).abs() < 1e-17);
    }

    #[test]
    fn low_degree_evaluation() {
        let p = params(1.5, 0.7, 0.02);
        let (tab, _) = RecurrenceTable::compute(&p, 4, P256).unwrap();
        let e = eval_monic(&tab, 0, 0.3).unwrap();
        assert_eq!(e.value, 1);
        assert_eq!(e.derivative, 0);
        let e = eval_monic(&tab, 1, 0.3).unwrap();
        let expected = Float::with_val(256, 0.3) - &tab.a[0];
        assert_eq!(e.value, expected);
        assert_eq!(e.derivative, 1);
        assert!(matches!(
            eval_monic(&tab, 5, 0.3),
            Err(Error::DegreeOutOfRange { n: 5, max: 4 })
        ));
    }

    #[test]
    fn derivative_matches_central_difference() {
        let p = params(2.0, 1.0, 0.05);
        let (tab, _) = RecurrenceTable::compute(&p, 10, P256).unwrap();
        let x = Float::with_val(256, 0.37);
        let hstep = Float::with_val(256, 1e-30);
        let up = eval_monic_mp(&tab, 10, &Float::with_val(256, &x + &hstep)).unwrap();
        let dn = eval_monic_mp(&tab, 10, &Float::with_val(256, &x - &hstep)).unwrap();
        let fd = (up.value - dn.value) / (hstep * 2u32);
        let d = eval_monic_mp(&tab, 10, &x).unwrap().derivative;
        let rel = Float::with_val(256, &fd - &d).abs() / d.clone().abs();
        assert!(rel.to_f64() < 1e-40);
    }

    #[test]
    fn complex_eval_agrees_on_real_axis() {
        let p = params(1.0, 2.0, 0.01);
        let (tab, _) = RecurrenceTable::compute(&p, 8, P256).unwrap();
        for &x in &[-0.5, 0.2, 0.9, 2.0] {
            let r = eval_monic(&tab, 8, x).unwrap().value.to_f64();
            let c = eval_monic_complex(&tab, 8, Complex64::new(x, 0.0)).unwrap();
            assert!((c.re - r).abs() <= 1e-15 * r.abs());
            assert_eq!(c.im, 0.0);
        }
        // Conjugate symmetry of a real polynomial.
        let z = Complex64::new(0.5, 0.8);
        let a = eval_monic_complex(&tab, 8, z).unwrap();
        let b = eval_monic_complex(&tab, 8, z.conj()).unwrap();
        assert_eq!(a, b.conj());
    }

    #[test]
    fn orthogonality_small() {
        let p = params(1.5, 2.5, 0.01);
        let (tab, rule) = RecurrenceTable::compute(&p, 10, P256).unwrap();
        let r00 = orthogonality_residual(&tab, 0, 0, &rule).unwrap();
        assert!(r00.abs().to_f64() < 1e-60);
        let r01 = orthogonality_residual(&tab, 0, 1, &rule).unwrap();
        assert!(r01.abs().to_f64() < 1e-60);
        let fine = rule.refined().unwrap();
        let r79 = orthogonality_residual(&tab, 7, 9, &fine).unwrap().abs();
        let bound = tab.h[7].to_f64() * PrecisionConfig::default().refinement_tol();
        assert!(r79.to_f64() < bound, "{} vs {bound:e}", r79.to_f64());
    }

    #[test]
    fn zeros_interlace() {
        let p = params(1.0, 2.0, 0.05);
        let (tab, _) = RecurrenceTable::compute(&p, 24, P256).unwrap();
        for n in [5usize, 12, 23] {
            let zn = zeros(&tab, n).unwrap();
            let zm = zeros(&tab, n + 1).unwrap();
            assert_eq!(zn.len(), n);
            assert_eq!(zm.len(), n + 1);
            for k in 0..n {
                assert!(zm[k] < zn[k] && zn[k] < zm[k + 1], "n={n} k={k}");
            }
            assert!(zm[0] > 0.0 && zm[n] < 1.0);
        }
    }

    #[test]
    fn jacobi_zeros_of_degree_two() {
        // Shifted Jacobi(1,1) quadratic: (x - 1/2)^2 - b_1 with b_1 = 1/20.
        let (tab, _) = RecurrenceTable::compute(&params(1.0, 1.0, 0.0), 4, P256).unwrap();
        let z = zeros(&tab, 2).unwrap();
        let r = 0.05f64.sqrt();
        assert!((z[0] - (0.5 - r)).abs() < 1e-15);
        assert!((z[1] - (0.5 + r)).abs() < 1e-15);
    }

    #[test]
    fn positivity_and_bounds() {
        let p = params(0.6, 3.0, 0.3);
        let (tab, _) = RecurrenceTable::compute(&p, 20, P256).unwrap();
        for n in 0..=20 {
            assert!(tab.h[n] > 0);
            assert!(tab.a[n] > 0 && tab.a[n] < 1);
            if n > 0 {
                assert!(tab.b[n] > 0);
                let ratio = Float::with_val(256, &tab.h[n] / &tab.h[n - 1]);
                assert_eq!(ratio, tab.b[n]);
            }
        }
    }

    #[test]
    fn under_resolved_rule_is_rejected() {
        let p = params(1.0, 1.0, 0.0);
        let rule = build_rule(2, 4, 0.25, P256).unwrap();
        assert!(matches!(
            stieltjes(&p, 4, &rule),
            Err(Error::InsufficientQuadrature { .. })
        ));
    }

    #[test]
    fn rct_round_trip_is_exact() {
        let p = params(1.25, 0.75, 0.001);
        let (tab, _) = RecurrenceTable::compute(&p, 6, PrecisionConfig::new(192).unwrap()).unwrap();
        let text = tab.to_rct();
        assert!(text.starts_with("pjop-rct v1 1.25 0.75 0.001 6 192\n"));
        assert_eq!(text.lines().count(), 8);
        let back = RecurrenceTable::from_rct(&text).unwrap();
        assert_eq!(back, tab);
    }

    #[test]
    fn rct_rejects_garbage() {
        assert!(RecurrenceTable::from_rct("").is_err());
        assert!(RecurrenceTable::from_rct("pjop-rct v2 1 1 0 1 256\n").is_err());
        assert!(RecurrenceTable::from_rct("pjop-rct v1 1 1 0 1 256\n0 0.5 0.1 0.1\n").is_err());
        assert!(RecurrenceTable::from_rct("pjop-rct v1 -1 1 0 0 256\n0 0.5 0.1 0.1\n").is_err());
    }
}
