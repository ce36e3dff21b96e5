//! Bessel `J_nu`, `J_nu'` of real order `nu > -1` and Airy `Ai`, `Ai'` on the
//! real line, plus the real Gamma function feeding the Bessel series.
//!
//! All series and expansions are summed in MPFR floats whose precision grows
//! with the argument, so that cancellation in the power series never reaches
//! the returned `f64`.

use std::sync::OnceLock;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Accuracy target of [`gamma`] in bits.
pub const GAMMA_BITS: u32 = 256;

/// Working precision of the asymptotic expansions.
const ASYM_BITS: u32 = 128;

/// Series summation cap; every supported argument converges far earlier.
const MAX_TERMS: usize = 20_000;

/// Truncation and crossover settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunConfig {
    /// Relative truncation tolerance for series and expansions.
    pub series_tol: f64,
    /// Bessel hands over to the Hankel expansion at `max(bessel_crossover, 2 nu^2)`.
    pub bessel_crossover: f64,
    /// Airy hands over to the exponential/oscillatory expansions at this `|x|`.
    pub airy_crossover: f64,
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        Self {
            series_tol: 1e-40,
            bessel_crossover: 25.0,
            airy_crossover: 10.0,
        }
    }
}

impl SpecFunConfig {
    pub fn new(series_tol: f64, bessel_crossover: f64, airy_crossover: f64) -> Result<Self> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if !ok(series_tol) {
            return Err(Error::Domain {
                value: series_tol,
                domain: "series_tol > 0",
            });
        }
        if !ok(bessel_crossover) {
            return Err(Error::Domain {
                value: bessel_crossover,
                domain: "bessel_crossover > 0",
            });
        }
        if !ok(airy_crossover) {
            return Err(Error::Domain {
                value: airy_crossover,
                domain: "airy_crossover > 0",
            });
        }
        Ok(Self {
            series_tol,
            bessel_crossover,
            airy_crossover,
        })
    }

    /// Argument above which `J_nu` uses the Hankel expansion.
    pub fn bessel_switch(&self, nu: f64) -> f64 {
        self.bessel_crossover.max(2.0 * nu * nu)
    }

    pub fn bessel_j(&self, nu: f64, x: f64) -> Result<f64> {
        check_order(nu)?;
        check_arg(x)?;
        if x == 0.0 {
            return if nu == 0.0 {
                Ok(1.0)
            } else if nu > 0.0 {
                Ok(0.0)
            } else {
                Err(Error::Domain {
                    value: x,
                    domain: "x > 0 for negative order",
                })
            };
        }
        if x >= self.bessel_switch(nu) {
            Ok(hankel(nu, x, self.series_tol).to_f64())
        } else {
            Ok(bessel_series(nu, x, self.series_tol)?.0.to_f64())
        }
    }

    pub fn bessel_j_prime(&self, nu: f64, x: f64) -> Result<f64> {
        check_order(nu)?;
        check_arg(x)?;
        if x == 0.0 {
            return if nu == 1.0 {
                Ok(0.5)
            } else if nu == 0.0 || nu > 1.0 {
                Ok(0.0)
            } else {
                Err(Error::Domain {
                    value: x,
                    domain: "x > 0 for order in (-1, 1) other than 0",
                })
            };
        }
        if x >= self.bessel_switch(nu) {
            let lo = hankel(nu - 1.0, x, self.series_tol);
            let hi = hankel(nu + 1.0, x, self.series_tol);
            Ok(((lo - hi) / 2u32).to_f64())
        } else {
            Ok(bessel_series(nu, x, self.series_tol)?.1.to_f64())
        }
    }

    pub fn airy_ai(&self, x: f64) -> Result<f64> {
        Ok(self.airy_ai_pair(x)?.0)
    }

    pub fn airy_ai_prime(&self, x: f64) -> Result<f64> {
        Ok(self.airy_ai_pair(x)?.1)
    }

    /// `(Ai(x), Ai'(x))`.
    pub fn airy_ai_pair(&self, x: f64) -> Result<(f64, f64)> {
        if !x.is_finite() {
            return Err(Error::Domain {
                value: x,
                domain: "finite x",
            });
        }
        if x.abs() > self.airy_crossover {
            Ok(airy_asymptotic(x, self.series_tol))
        } else {
            let m = airy_maclaurin(x, self.series_tol)?;
            Ok((m.ai.to_f64(), m.ai_prime.to_f64()))
        }
    }
}

pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    SpecFunConfig::default().bessel_j(nu, x)
}

pub fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    SpecFunConfig::default().bessel_j_prime(nu, x)
}

pub fn airy_ai(x: f64) -> f64 {
    SpecFunConfig::default()
        .airy_ai(x)
        .expect("finite argument")
}

pub fn airy_ai_prime(x: f64) -> f64 {
    SpecFunConfig::default()
        .airy_ai_prime(x)
        .expect("finite argument")
}

/// `Ai''(x)` from the twice differentiated Maclaurin series.
pub fn airy_ai_second(x: f64) -> Result<f64> {
    Ok(airy_maclaurin(x, SpecFunConfig::default().series_tol)?
        .ai_second
        .to_f64())
}

/// `(Bi(x), Bi'(x))` from the Maclaurin series; a companion solution used to
/// check the Wronskian.
#[doc(hidden)]
pub fn airy_bi_pair(x: f64) -> Result<(f64, f64)> {
    let m = airy_maclaurin(x, SpecFunConfig::default().series_tol)?;
    Ok((m.bi.to_f64(), m.bi_prime.to_f64()))
}

fn check_order(nu: f64) -> Result<()> {
    if nu > -1.0 && nu.is_finite() {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(nu))
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            value: x,
            domain: "x >= 0",
        })
    }
}

/// Bits that absorb the cancellation of an alternating series whose largest
/// term is about `exp(growth)`, on top of the truncation tolerance.
fn series_bits(growth: f64, tol: f64) -> u32 {
    let tol_bits = (-tol.log2()).max(53.0);
    (64.0 + tol_bits + growth.max(0.0) * std::f64::consts::LOG2_E).ceil() as u32
}

/// Ascending series for `(J_nu(x), J_nu'(x))`, `x > 0`.
fn bessel_series(nu: f64, x: f64, tol: f64) -> Result<(Float, Float)> {
    let bits = series_bits(x, tol);
    let xf = Float::with_val(bits, x);
    let half = Float::with_val(bits, &xf / 2u32);
    let quarter_sq = Float::with_val(bits, half.square_ref());
    let nu_f = Float::with_val(bits, nu);
    let mut term = Float::with_val(bits, (&half).pow(&nu_f));
    term /= gamma(&Float::with_val(bits.min(GAMMA_BITS), nu + 1.0))?;
    let mut sum = term.clone();
    // d/dx of (x/2)^(nu + 2k) is (nu + 2k)/x times the same power.
    let mut dsum = Float::with_val(bits, &term * &nu_f);
    let mut k = 0usize;
    loop {
        k += 1;
        if k > MAX_TERMS {
            return Err(Error::ConvergenceFailure { m: k });
        }
        term *= &quarter_sq;
        term /= Float::with_val(bits, &nu_f + k as u32) * (k as u32);
        term = -term;
        sum += &term;
        let weight = Float::with_val(bits, &nu_f + 2 * k as u32);
        dsum += Float::with_val(bits, &term * &weight);
        // Terms only decay once k exceeds x/2.
        if (k as f64) > x / 2.0 {
            let scale = sum.clone().abs().max(&dsum.clone().abs());
            if term.clone().abs() * weight.abs().max(&Float::with_val(bits, 1)) <= scale * tol {
                break;
            }
        }
    }
    let d = dsum / &xf;
    Ok((sum, d))
}

/// Hankel large-argument expansion of `J_nu(x)` at optimal truncation.
fn hankel(nu: f64, x: f64, tol: f64) -> Float {
    let bits = ASYM_BITS;
    let xf = Float::with_val(bits, x);
    let mu = Float::with_val(bits, 4.0 * nu * nu);
    let eight_x = Float::with_val(bits, &xf * 8u32);
    let mut a = Float::with_val(bits, 1);
    let mut p = Float::with_val(bits, 1);
    let mut q = Float::with_val(bits, 0);
    let mut prev = Float::with_val(bits, f64::INFINITY);
    for k in 1..MAX_TERMS {
        let odd = Float::with_val(bits, (2 * k - 1) as u64).square();
        a *= Float::with_val(bits, &mu - &odd);
        a /= Float::with_val(bits, &eight_x * k as u32);
        let mag = a.clone().abs();
        if mag.is_zero() || mag > prev {
            break;
        }
        // Signs follow (-1)^floor(k/2) inside P and Q.
        let signed = if (k / 2) % 2 == 0 { a.clone() } else { -a.clone() };
        if k % 2 == 0 {
            p += &signed;
        } else {
            q += &signed;
        }
        if mag < tol {
            break;
        }
        prev = mag;
    }
    let pi = Float::with_val(bits, Constant::Pi);
    let chi = Float::with_val(bits, &xf - Float::with_val(bits, nu / 2.0 + 0.25) * &pi);
    let (s, c) = chi.sin_cos(Float::new(bits));
    let amp = (Float::with_val(bits, 2u32) / (pi * &xf)).sqrt();
    amp * (p * c - q * s)
}

struct AiryMaclaurin {
    ai: Float,
    ai_prime: Float,
    ai_second: Float,
    bi: Float,
    bi_prime: Float,
}

/// Airy functions from the two homogeneous Maclaurin solutions
/// `f = sum 3^k (1/3)_k x^(3k) / (3k)!` and `g = sum 3^k (2/3)_k x^(3k+1) / (3k+1)!`.
fn airy_maclaurin(x: f64, tol: f64) -> Result<AiryMaclaurin> {
    if !x.is_finite() {
        return Err(Error::Domain {
            value: x,
            domain: "finite x",
        });
    }
    // Both f and g grow like exp(2/3 |x|^(3/2)) while Ai decays at that rate.
    let zeta = 2.0 / 3.0 * x.abs().powf(1.5);
    let bits = series_bits(2.0 * zeta, tol).min(GAMMA_BITS);
    let xf = Float::with_val(bits, x);
    let cube = Float::with_val(bits, (&xf).pow(3u32));
    let mut tf = Float::with_val(bits, 1);
    let mut tg = xf.clone();
    let mut f = tf.clone();
    let mut g = tg.clone();
    // Accumulate x f', x g', x^2 f'', x^2 g'' term by term.
    let mut df = Float::new(bits);
    let mut dg = tg.clone();
    let mut ddf = Float::new(bits);
    let mut ddg = Float::new(bits);
    let mut k = 0u32;
    loop {
        k += 1;
        if k as usize > MAX_TERMS {
            return Err(Error::ConvergenceFailure { m: k as usize });
        }
        tf *= &cube;
        tf /= (3 * k - 1) * (3 * k);
        tg *= &cube;
        tg /= (3 * k) * (3 * k + 1);
        f += &tf;
        g += &tg;
        let ef = 3 * k;
        let eg = 3 * k + 1;
        df += Float::with_val(bits, &tf * ef);
        dg += Float::with_val(bits, &tg * eg);
        ddf += Float::with_val(bits, &tf * (ef * (ef - 1)));
        ddg += Float::with_val(bits, &tg * (eg * (eg - 1)));
        if k as f64 > zeta {
            let scale = f.clone().abs() + g.clone().abs();
            let big = (tf.clone().abs() + tg.clone().abs()) * (eg * eg);
            if big <= scale * tol {
                break;
            }
        }
    }
    let (fp, gp, fpp, gpp) = if x == 0.0 {
        (
            Float::new(bits),
            Float::with_val(bits, 1),
            Float::new(bits),
            Float::new(bits),
        )
    } else {
        let x2 = Float::with_val(bits, xf.square_ref());
        (df / &xf, dg / &xf, ddf / &x2, ddg / x2)
    };
    let (c1, c2) = airy_constants(bits);
    let sqrt3 = Float::with_val(bits, 3u32).sqrt();
    let ai = Float::with_val(bits, &c1 * &f) - Float::with_val(bits, &c2 * &g);
    let ai_prime = Float::with_val(bits, &c1 * &fp) - Float::with_val(bits, &c2 * &gp);
    let ai_second = Float::with_val(bits, &c1 * &fpp) - Float::with_val(bits, &c2 * &gpp);
    let bi = Float::with_val(bits, &c1 * &f) + Float::with_val(bits, &c2 * &g);
    let bi_prime = Float::with_val(bits, &c1 * &fp) + Float::with_val(bits, &c2 * &gp);
    Ok(AiryMaclaurin {
        ai,
        ai_prime,
        ai_second,
        bi: bi * &sqrt3,
        bi_prime: bi_prime * sqrt3,
    })
}

/// `Ai(0) = 3^(-2/3) / Gamma(2/3)` and `-Ai'(0) = 3^(-1/3) / Gamma(1/3)`.
fn airy_constants(bits: u32) -> (Float, Float) {
    static CONSTS: OnceLock<(Float, Float)> = OnceLock::new();
    let (c1, c2) = CONSTS.get_or_init(|| {
        let b = GAMMA_BITS;
        let third = Float::with_val(b, 1) / 3u32;
        let two_thirds = Float::with_val(b, 2) / 3u32;
        let three = Float::with_val(b, 3u32);
        let c1 = Float::with_val(b, (&three).pow(-two_thirds.clone()))
            / gamma(&two_thirds).expect("positive argument");
        let c2 = Float::with_val(b, (&three).pow(-third.clone()))
            / gamma(&third).expect("positive argument");
        (c1, c2)
    });
    (Float::with_val(bits, c1), Float::with_val(bits, c2))
}

/// Asymptotic series coefficients `u_k`, `v_k` (DLMF 9.7.2) until they stop
/// decreasing relative to `zeta^k`.
fn airy_coefficients(zeta: &Float, tol: f64) -> (Vec<Float>, Vec<Float>) {
    let bits = zeta.prec();
    let mut u = vec![Float::with_val(bits, 1)];
    let mut v = vec![Float::with_val(bits, 1)];
    let mut last = Float::with_val(bits, f64::INFINITY);
    for k in 1..MAX_TERMS as u64 {
        let num = (6 * k - 5) * (6 * k - 3) * (6 * k - 1);
        let den = (2 * k - 1) * 216 * k;
        let uk = Float::with_val(bits, &u[k as usize - 1] * num) / den;
        let vk = -Float::with_val(bits, &uk * (6 * k + 1)) / (6 * k - 1);
        let mag = Float::with_val(bits, uk.clone().abs() / zeta.clone().pow(k as u32));
        if mag > last {
            break;
        }
        u.push(uk);
        v.push(vk);
        if mag < tol {
            break;
        }
        last = mag;
    }
    (u, v)
}

fn airy_asymptotic(x: f64, tol: f64) -> (f64, f64) {
    let bits = ASYM_BITS;
    let y = Float::with_val(bits, x.abs());
    let zeta = Float::with_val(bits, y.clone().pow(Float::with_val(bits, 1.5))) * 2u32 / 3u32;
    let (u, v) = airy_coefficients(&zeta, tol);
    let sqrt_pi = Float::with_val(bits, Constant::Pi).sqrt();
    let quarter = Float::with_val(bits, y.clone().pow(Float::with_val(bits, 0.25)));
    // sum_k s_k c_k / zeta^k over the index set `keep` with sign pattern `sign`.
    let series = |c: &[Float], alternate: bool, parity: Option<usize>| {
        let mut s = Float::new(bits);
        let mut zpow = Float::with_val(bits, 1);
        for (k, ck) in c.iter().enumerate() {
            if k > 0 {
                zpow *= &zeta;
            }
            let take = match parity {
                Some(p) => k % 2 == p,
                None => true,
            };
            if take {
                let mut term = Float::with_val(bits, ck / &zpow);
                let flip = match parity {
                    // (-1)^j for the j-th kept index.
                    Some(_) => (k / 2) % 2 == 1,
                    None => alternate && k % 2 == 1,
                };
                if flip {
                    term = -term;
                }
                s += term;
            }
        }
        s
    };
    if x > 0.0 {
        let decay = Float::with_val(bits, -&zeta).exp();
        let ai = Float::with_val(bits, &decay * series(&u, true, None))
            / (Float::with_val(bits, &sqrt_pi * &quarter) * 2u32);
        let aip = -(decay * series(&v, true, None) * &quarter) / (sqrt_pi * 2u32);
        (ai.to_f64(), aip.to_f64())
    } else {
        let pi = Float::with_val(bits, Constant::Pi);
        let phase = Float::with_val(bits, &zeta + pi / 4u32);
        let (s, c) = phase.sin_cos(Float::new(bits));
        let ue = series(&u, false, Some(0));
        let uo = series(&u, false, Some(1));
        let ve = series(&v, false, Some(0));
        let vo = series(&v, false, Some(1));
        let ai = (Float::with_val(bits, &s * &ue) - Float::with_val(bits, &c * &uo))
            / Float::with_val(bits, &sqrt_pi * &quarter);
        let aip = -(Float::with_val(bits, &c * &ve) + Float::with_val(bits, &s * &vo)) * &quarter
            / sqrt_pi;
        (ai.to_f64(), aip.to_f64())
    }
}

struct SpougeTable {
    a: u32,
    bits: u32,
    coeffs: Vec<Float>,
}

fn spouge_table() -> &'static SpougeTable {
    static TABLE: OnceLock<SpougeTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Relative error is below (2 pi)^-(a + 1/2) / sqrt(a).
        let a = (GAMMA_BITS as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI).ln())
            .ceil() as u32
            + 2;
        // The coefficients alternate and reach about e^a in size.
        let bits = 2 * GAMMA_BITS + 2 * a;
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        let mut coeffs = vec![two_pi.sqrt()];
        let mut fact = Float::with_val(bits, 1);
        for k in 1..a {
            if k > 1 {
                fact *= k - 1;
            }
            let base = Float::with_val(bits, a - k);
            let mut c = base.clone().pow(Float::with_val(bits, k as f64 - 0.5));
            c *= Float::with_val(bits, a - k).exp();
            c /= &fact;
            if k % 2 == 0 {
                c = -c;
            }
            coeffs.push(c);
        }
        SpougeTable { a, bits, coeffs }
    })
}

/// `Gamma(x)` for `x > 0` by Spouge's approximation, accurate to
/// [`GAMMA_BITS`] bits and rounded to the precision of `x`.
pub fn gamma(x: &Float) -> Result<Float> {
    if !(x.is_finite() && *x > 0) {
        return Err(Error::Domain {
            value: x.to_f64(),
            domain: "x > 0",
        });
    }
    let tab = spouge_table();
    let bits = tab.bits;
    // Spouge approximates Gamma(z + 1); shift small arguments up first.
    let mut z = Float::with_val(bits, x - 1u32);
    let mut scale = Float::with_val(bits, 1);
    while z < 1 {
        z += 1u32;
        scale *= &z;
    }
    let mut sum = tab.coeffs[0].clone();
    for (k, c) in tab.coeffs.iter().enumerate().skip(1) {
        sum += Float::with_val(bits, c / Float::with_val(bits, &z + k as u32));
    }
    let za = Float::with_val(bits, &z + tab.a);
    let expo = Float::with_val(bits, &z + 0.5f64);
    let lead = Float::with_val(bits, (&za).pow(&expo)) * Float::with_val(bits, -&za).exp();
    let g = lead * sum / scale;
    Ok(Float::with_val(x.prec(), g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn mpfr_jn(n: i32, x: f64) -> f64 {
        Float::with_val(512, x).jn(n).to_f64()
    }

    fn mpfr_ai(x: f64) -> f64 {
        Float::with_val(512, x).ai().to_f64()
    }

    fn mpfr_ai_prime(x: f64) -> f64 {
        let h = Float::with_val(512, 1e-30);
        let xp = Float::with_val(512, x) + &h;
        let xm = Float::with_val(512, x) - &h;
        ((xp.ai() - xm.ai()) / (h * 2u32)).to_f64()
    }

    #[test]
    fn gamma_matches_mpfr() {
        for &x in &[0.25, 1.0 / 3.0, 0.5, 1.0, 1.5, 2.0 / 3.0, 2.5, 7.3, 31.0, 100.5] {
            let xf = Float::with_val(256, x);
            let ours = gamma(&xf).unwrap();
            let exact = xf.clone().gamma();
            let r = Float::with_val(256, &ours - &exact).abs() / exact;
            assert!(r.to_f64() < 1e-70, "x={x} rel={}", r.to_f64());
        }
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(gamma(&Float::with_val(64, 0.0)).is_err());
        assert!(gamma(&Float::with_val(64, -1.5)).is_err());
    }

    #[test]
    fn bessel_spec_examples() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        let half = bessel_j(0.5, 1.0).unwrap();
        let exact = (2.0 / std::f64::consts::PI).sqrt() * 1f64.sin();
        assert!(rel(half, exact) < 1e-14);
        assert!(rel(bessel_j(1.0, 1.0).unwrap(), 0.440_050_585_744_933_5) < 1e-14);
    }

    #[test]
    fn bessel_prime_examples() {
        let d = bessel_j_prime(0.0, 1.0).unwrap();
        assert!(rel(d, -bessel_j(1.0, 1.0).unwrap()) < 1e-14);
        assert_eq!(bessel_j_prime(1.0, 0.0).unwrap(), 0.5);
        // J'_{3/2}(x) from the closed form J_{3/2} = sqrt(2/(pi x)) (sin x / x - cos x).
        let x = 2.0f64;
        let j32 = |x: f64| (2.0 / (std::f64::consts::PI * x)).sqrt() * (x.sin() / x - x.cos());
        let j12 = |x: f64| (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
        let exact = j12(x) - 1.5 / x * j32(x);
        assert!(rel(bessel_j_prime(1.5, x).unwrap(), exact) < 1e-13);
    }

    #[test]
    fn bessel_against_mpfr_integer_orders() {
        for n in 0..4 {
            for i in 1..=120 {
                let x = 0.25 * i as f64;
                let exact = mpfr_jn(n, x);
                let got = bessel_j(n as f64, x).unwrap();
                // Relative accuracy is meaningless right at a zero.
                let err = (got - exact).abs() / exact.abs().max(1e-3);
                assert!(err < 1e-12, "n={n} x={x} got={got} exact={exact}");
            }
        }
    }

    #[test]
    fn bessel_half_integer_closed_form_across_crossover() {
        for i in 1..=80 {
            let x = 0.5 * i as f64;
            let exact = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
            let got = bessel_j(0.5, x).unwrap();
            assert!((got - exact).abs() / exact.abs().max(1e-3) < 1e-12, "x={x}");
        }
    }

    #[test]
    fn bessel_crossover_continuity() {
        let series = SpecFunConfig::new(1e-40, 1e6, 10.0).unwrap();
        let asym = SpecFunConfig::new(1e-40, 1e-3, 10.0).unwrap();
        for &nu in &[0.0, 0.5, 1.0, 2.5] {
            for i in 0..=20 {
                let x = 22.0 + 0.3 * i as f64;
                let a = series.bessel_j(nu, x).unwrap();
                let b = asym.bessel_j(nu, x).unwrap();
                assert!((a - b).abs() / a.abs().max(1e-2) < 1e-10, "nu={nu} x={x}");
                let a = series.bessel_j_prime(nu, x).unwrap();
                let b = asym.bessel_j_prime(nu, x).unwrap();
                assert!((a - b).abs() / a.abs().max(1e-2) < 1e-10, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn bessel_rejects_bad_order() {
        assert_eq!(bessel_j(-1.0, 1.0), Err(Error::OrderOutOfRange(-1.0)));
        assert!(bessel_j(1.0, -0.5).is_err());
        assert!(bessel_j(-0.5, 0.0).is_err());
    }

    #[test]
    fn airy_values_at_zero() {
        let c1 = 0.355_028_053_887_817_2;
        let c2 = 0.258_819_403_792_806_8;
        assert!(rel(airy_ai(0.0), c1) < 1e-15);
        assert!(rel(airy_ai_prime(0.0), -c2) < 1e-15);
    }

    #[test]
    fn airy_against_mpfr() {
        for i in -200..=200 {
            let x = 0.1 * i as f64;
            let exact = mpfr_ai(x);
            let err = (airy_ai(x) - exact).abs() / exact.abs().max(1e-3 * (-(x.max(0.0)).powf(1.5)).exp());
            assert!(err < 1e-12, "x={x} got={} exact={exact}", airy_ai(x));
            let exact_p = mpfr_ai_prime(x);
            let got_p = airy_ai_prime(x);
            let err = (got_p - exact_p).abs()
                / exact_p.abs().max(1e-3 * (-(x.max(0.0)).powf(1.5)).exp());
            assert!(err < 1e-12, "x={x} got={got_p} exact={exact_p}");
        }
    }

    #[test]
    fn airy_crossover_continuity() {
        let series = SpecFunConfig::new(1e-40, 25.0, 1e6).unwrap();
        let asym = SpecFunConfig::new(1e-40, 25.0, 1e-3).unwrap();
        for &x in &[-12.0, -11.0, -10.5, -9.5, 9.5, 10.5, 11.0, 12.0] {
            let (a, ap) = series.airy_ai_pair(x).unwrap();
            let (b, bp) = asym.airy_ai_pair(x).unwrap();
            let scale = if x > 0.0 { a.abs() } else { 1e-2 };
            assert!((a - b).abs() / a.abs().max(scale) < 1e-10, "x={x}");
            let scale = if x > 0.0 { ap.abs() } else { 1e-2 };
            assert!((ap - bp).abs() / ap.abs().max(scale) < 1e-10, "x={x}");
        }
    }

    #[test]
    fn airy_wronskian() {
        for &x in &[-2.0, 0.0, 2.0] {
            let (ai, aip) = SpecFunConfig::default().airy_ai_pair(x).unwrap();
            let (bi, bip) = airy_bi_pair(x).unwrap();
            let w = ai * bip - aip * bi;
            assert!((w - std::f64::consts::FRAC_1_PI).abs() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn bessel_three_term_recurrence(
            nu in prop::sample::select(vec![0.5f64, 1.0, 2.5]),
            x in 0.1f64..20.0,
        ) {
            let lo = bessel_j(nu - 1.0, x).unwrap();
            let mid = bessel_j(nu, x).unwrap();
            let hi = bessel_j(nu + 1.0, x).unwrap();
            let lhs = lo + hi;
            let rhs = 2.0 * nu / x * mid;
            let scale = lo.abs().max(hi.abs()).max(rhs.abs());
            prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
        }

        #[test]
        fn airy_ode_residual(x in -5.0f64..5.0) {
            let r = airy_ai_second(x).unwrap() - x * airy_ai(x);
            prop_assert!(r.abs() <= 1e-10);
        }

        #[test]
        fn bessel_prime_matches_recurrence(nu in 0.01f64..3.0, x in 0.2f64..40.0) {
            let d = bessel_j_prime(nu, x).unwrap();
            let other = 0.5 * (bessel_j(nu - 1.0, x).unwrap() - bessel_j(nu + 1.0, x).unwrap());
            let scale = bessel_j(nu - 1.0, x).unwrap().abs().max(bessel_j(nu + 1.0, x).unwrap().abs());
            prop_assert!((d - other).abs() <= 1e-11 * scale.max(1e-3));
        }
    }
}
