//! Leading-order strong asymptotics of the monic polynomials: outside the
//! interval, in the bulk, and at either edge in the Bessel (`2n^2 t -> 0`) and
//! Airy (`2n^2 t -> infinity`) regimes, together with the conformal frame
//! they are built from.
//!
//! Complex powers use principal branches (`arg in (-pi, pi]`); boundary values
//! on `(0, 1)` are limits from the upper half plane.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::SpecFunConfig;
use crate::weight::{log_weight, WeightParams};

/// Default cap on the Bessel argument of the hard-edge predictors.
pub const DEFAULT_BESSEL_ARG_CAP: f64 = 40.0;

/// Regime caps and the special-function settings used by the predictors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymConfig {
    pub bessel_arg_cap: f64,
    pub specfun: SpecFunConfig,
}

impl Default for AsymConfig {
    fn default() -> Self {
        Self {
            bessel_arg_cap: DEFAULT_BESSEL_ARG_CAP,
            specfun: SpecFunConfig::default(),
        }
    }
}

/// `phi`, the Szego function `D` and the local conformal maps `f0`, `f1`
/// for a given weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalFrame {
    pub params: WeightParams,
}

impl ConformalFrame {
    pub fn new(params: WeightParams) -> Self {
        Self { params }
    }

    /// `2z - 1 + 2 sqrt(z) sqrt(z - 1)`; the product of principal roots keeps
    /// the cut on `[0, 1]` only.
    pub fn phi(&self, z: Complex64) -> Complex64 {
        phi(z)
    }

    /// `phi(z)^((alpha + beta) / 2) z^(-alpha / 2) (z - 1)^(-beta / 2)`.
    pub fn szego_d(&self, z: Complex64) -> Complex64 {
        let (a, b) = (self.params.alpha, self.params.beta);
        let one = Complex64::new(1.0, 0.0);
        (phi(z).ln() * (0.5 * (a + b)) - z.ln() * (0.5 * a) - (z - one).ln() * (0.5 * b)).exp()
    }

    pub fn d_infinity(&self) -> f64 {
        2f64.powf(self.params.alpha + self.params.beta)
    }

    /// `(log phi(z))^2`, vanishing at `z = 1`.
    pub fn f1(&self, z: Complex64) -> Complex64 {
        let l = phi(z).ln();
        l * l
    }

    /// `(log(phi(z) / phi(0)))^2` with `phi(0) = -1`, vanishing at `z = 0`.
    pub fn f0(&self, z: Complex64) -> Complex64 {
        let l = (-phi(z)).ln();
        l * l
    }

    /// `((z - 1) / z)^(1/4)`.
    pub fn a_quarter(&self, z: Complex64) -> Complex64 {
        ((z - Complex64::new(1.0, 0.0)) / z).powf(0.25)
    }
}

pub fn phi(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    z * 2.0 - one + z.sqrt() * (z - one).sqrt() * 2.0
}

/// Upper boundary value `phi_+(x) = exp(2i arccos sqrt x)` on `(0, 1)`.
pub fn phi_plus(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * x.sqrt().acos())
}

/// Distance from `z` to the segment `[0, 1]`.
pub fn distance_to_cut(z: Complex64) -> f64 {
    if z.re < 0.0 {
        z.norm()
    } else if z.re > 1.0 {
        (z - Complex64::new(1.0, 0.0)).norm()
    } else {
        z.im.abs()
    }
}

/// Leading term of `p_n(z)` off the interval:
/// `2^-(2n+a+b+1) phi^((2n+a+b+1)/2) (z-1)^-((2b+1)/4) z^-((2a+1)/4) e^(t/(2z(1-z)))`.
pub fn outer_asymptotic(n: usize, z: Complex64, p: &WeightParams, delta: f64) -> Result<Complex64> {
    let dist = distance_to_cut(z);
    if !(dist >= delta) {
        return Err(Error::TooCloseToCut {
            re: z.re,
            im: z.im,
            delta,
        });
    }
    let (a, b, t) = (p.alpha, p.beta, p.t);
    let one = Complex64::new(1.0, 0.0);
    let k = 2.0 * n as f64 + a + b + 1.0;
    let log = -k * std::f64::consts::LN_2 + phi(z).ln() * (0.5 * k)
        - (z - one).ln() * ((2.0 * b + 1.0) / 4.0)
        - z.ln() * ((2.0 * a + 1.0) / 4.0)
        + t / (z * (one - z) * 2.0);
    Ok(log.exp())
}

fn check_open_unit(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            value: x,
            domain: "(0, 1)",
        })
    }
}

/// `log(2^-(2n+a+b) x^-1/4 (1-x)^-1/4 w^-1/2)`, the amplitude shared by the
/// interior and edge predictors.
fn log_amplitude(n: usize, x: f64, p: &WeightParams) -> Result<f64> {
    let lw = log_weight(x, p)?;
    Ok(-(2.0 * n as f64 + p.alpha + p.beta) * std::f64::consts::LN_2
        - 0.25 * x.ln()
        - 0.25 * (-x).ln_1p()
        - 0.5 * lw)
}

/// Bulk amplitude `2^-(2n+a+b) w^-1/2 x^-1/4 (1-x)^-1/4`.
pub fn bulk_amplitude(n: usize, x: f64, p: &WeightParams) -> Result<f64> {
    check_open_unit(x)?;
    Ok(log_amplitude(n, x, p)?.exp())
}

/// Phase `(2n+a+b+1) arccos sqrt x - b pi / 2 - pi / 4` of the bulk predictor.
pub fn bulk_phase(n: usize, x: f64, p: &WeightParams) -> f64 {
    (2.0 * n as f64 + p.alpha + p.beta + 1.0) * x.sqrt().acos() - p.beta * FRAC_PI_2 - FRAC_PI_4
}

/// Leading term of `p_n(x)` inside `(0, 1)`.
pub fn bulk_asymptotic(n: usize, x: f64, p: &WeightParams) -> Result<f64> {
    Ok(bulk_amplitude(n, x, p)? * bulk_phase(n, x, p).cos())
}

/// Zeros of the bulk predictor's cosine, as values of `arccos sqrt x` in
/// `(0, pi/2)`, ascending.
pub fn bulk_predicted_zero_angles(n: usize, p: &WeightParams) -> Vec<f64> {
    let k = 2.0 * n as f64 + p.alpha + p.beta + 1.0;
    let shift = p.beta * FRAC_PI_2 + FRAC_PI_4;
    let mut out = Vec::new();
    let mut j = ((shift - FRAC_PI_2) / PI).floor() as i64 - 1;
    loop {
        let theta = (FRAC_PI_2 + j as f64 * PI + shift) / k;
        if theta >= FRAC_PI_2 {
            break;
        }
        if theta > 0.0 {
            out.push(theta);
        }
        j += 1;
    }
    out
}

/// Bessel argument `2n arccos sqrt x` at the right edge.
pub fn right_bessel_arg(n: usize, x: f64) -> f64 {
    2.0 * n as f64 * x.sqrt().acos()
}

/// Bessel argument `n (pi - 2 arccos sqrt x)` at the left edge.
pub fn left_bessel_arg(n: usize, x: f64) -> f64 {
    n as f64 * (PI - 2.0 * x.sqrt().acos())
}

fn check_bessel_arg(arg: f64, cfg: &AsymConfig) -> Result<()> {
    if arg > 0.0 && arg <= cfg.bessel_arg_cap {
        Ok(())
    } else {
        Err(Error::RegimeViolation(format!(
            "Bessel argument {arg} outside (0, {}]",
            cfg.bessel_arg_cap
        )))
    }
}

/// Hard-edge predictor at `x = 1`, order `beta`.
pub fn bessel_edge1_asymptotic(n: usize, x: f64, p: &WeightParams, cfg: &AsymConfig) -> Result<f64> {
    check_open_unit(x)?;
    let arg = right_bessel_arg(n, x);
    check_bessel_arg(arg, cfg)?;
    let zeta = 2.0 * (n * n) as f64 * p.t;
    let theta1 = (p.alpha + p.beta + 1.0) * x.sqrt().acos();
    let j = cfg.specfun.bessel_j(p.beta, arg)?;
    let dj = cfg.specfun.bessel_j_prime(p.beta, arg)?;
    let log_pref = 0.5 * PI.ln() + 0.5 * arg.ln() + log_amplitude(n, x, p)?
        - 0.5 * std::f64::consts::LN_2
        - zeta / (arg * arg);
    Ok(log_pref.exp() * (theta1.cos() * j + theta1.sin() * dj))
}

/// Hard-edge predictor at `x = 0`, order `alpha`.
pub fn bessel_edge0_asymptotic(n: usize, x: f64, p: &WeightParams, cfg: &AsymConfig) -> Result<f64> {
    check_open_unit(x)?;
    let arg = left_bessel_arg(n, x);
    check_bessel_arg(arg, cfg)?;
    let zeta = 2.0 * (n * n) as f64 * p.t;
    let theta3 = (p.alpha + p.beta + 1.0) * x.sqrt().acos() - (p.alpha + p.beta) * FRAC_PI_2;
    let j = cfg.specfun.bessel_j(p.alpha, arg)?;
    let dj = cfg.specfun.bessel_j_prime(p.alpha, arg)?;
    let log_pref = 0.5 * PI.ln() + 0.5 * arg.ln() + log_amplitude(n, x, p)?
        - 0.5 * std::f64::consts::LN_2
        - zeta / (arg * arg);
    Ok(log_pref.exp() * (theta3.sin() * j + theta3.cos() * dj))
}

/// Which edge a context describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Scaling quantities of the Airy-regime edge predictors at one point.
///
/// At the right edge the angles are `theta1`, `theta2` and the exponent in
/// the `d` constants is `beta`; at the left edge they are `theta3`, `theta4`
/// with `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeAsymptoticsContext {
    pub side: Side,
    pub n: usize,
    pub x: f64,
    pub zeta: f64,
    /// `2n arccos sqrt x` (right) or `n (pi - 2 arccos sqrt x)` (left).
    pub bessel_arg: f64,
    pub theta_main: f64,
    pub theta_sub: f64,
    pub lambda_abs: f64,
    pub xi: f64,
    pub b: f64,
    pub d11: f64,
    pub d12: f64,
    pub d21: f64,
    pub d22: f64,
}

impl EdgeAsymptoticsContext {
    /// Context at the right edge; requires `zeta > 0` and `|lambda| > 1`.
    pub fn right(n: usize, x: f64, p: &WeightParams) -> Result<Self> {
        check_open_unit(x)?;
        let acs = x.sqrt().acos();
        let arg = right_bessel_arg(n, x);
        let s = p.alpha + p.beta;
        Self::build(Side::Right, n, x, p, arg, (s + 1.0) * acs, (s - 1.0) * acs, p.beta)
    }

    /// Context at the left edge; requires `zeta > 0` and `|lambda_bar| > 1`.
    pub fn left(n: usize, x: f64, p: &WeightParams) -> Result<Self> {
        check_open_unit(x)?;
        let acs = x.sqrt().acos();
        let arg = left_bessel_arg(n, x);
        let s = p.alpha + p.beta;
        let shift = s * FRAC_PI_2;
        Self::build(
            Side::Left,
            n,
            x,
            p,
            arg,
            (s + 1.0) * acs - shift,
            (s - 1.0) * acs - shift,
            p.alpha,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn build(
        side: Side,
        n: usize,
        x: f64,
        p: &WeightParams,
        arg: f64,
        theta_main: f64,
        theta_sub: f64,
        order: f64,
    ) -> Result<Self> {
        let zeta = 2.0 * (n * n) as f64 * p.t;
        if !(zeta > 0.0) {
            return Err(Error::RegimeViolation(
                "Airy regime needs 2 n^2 t > 0".to_string(),
            ));
        }
        let lam = zeta.powf(-2.0 / 3.0) * arg * arg;
        if !(lam > 1.0) {
            return Err(Error::RegimeViolation(format!(
                "|lambda| = {lam} must exceed 1"
            )));
        }
        let c32 = 1.5f64;
        let xi = c32.powf(2.0 / 3.0) * (1.0 - lam) * zeta.powf(2.0 / 9.0) * lam.powf(-2.0 / 3.0);
        let b = 7.0 / (72.0 * (lam - 1.0));
        let angle = 0.5 * order * (1.0 / lam.sqrt()).acos();
        let (sn, cs) = angle.sin_cos();
        let d11 = c32.powf(1.0 / 6.0) * zeta.powf(-1.0 / 9.0) * lam.powf(-1.0 / 6.0) * cs;
        let d22 = c32.powf(-1.0 / 6.0) * zeta.powf(1.0 / 9.0) * lam.powf(1.0 / 6.0) * cs;
        let d12 = c32.powf(-1.0 / 6.0)
            * zeta.powf(-2.0 / 9.0)
            * (lam - 1.0).powf(-0.5)
            * lam.powf(1.0 / 6.0)
            * sn;
        let d21 = c32.powf(1.0 / 6.0)
            * zeta.powf(2.0 / 9.0)
            * (lam - 1.0).sqrt()
            * lam.powf(-1.0 / 6.0)
            * sn;
        Ok(Self {
            side,
            n,
            x,
            zeta,
            bessel_arg: arg,
            theta_main,
            theta_sub,
            lambda_abs: lam,
            xi,
            b,
            d11,
            d12,
            d21,
            d22,
        })
    }
}

/// The left-edge Airy bracket references `d11` in both coefficients as
/// printed; `Symmetric` uses `d12` in the `Ai'` coefficient, by analogy with
/// the right edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AiryVariant {
    #[default]
    Printed,
    Symmetric,
}

/// Soft-edge predictor at `x = 1`.
pub fn airy_edge1_asymptotic(n: usize, x: f64, p: &WeightParams, cfg: &AsymConfig) -> Result<f64> {
    let c = EdgeAsymptoticsContext::right(n, x, p)?;
    let (ai, aip) = cfg.specfun.airy_ai_pair(c.xi)?;
    let a = c.bessel_arg;
    let (s1, c1) = c.theta_main.sin_cos();
    let coef_ai = c1 * c.d11 + s1 * (c.d21 - c.b * c.d11) / a;
    let coef_aip = c1 * c.d12 - s1 * (c.d22 + c.b * c.d12) / a;
    let log_pref = 0.5 * PI.ln() + 0.5 * a.ln() + log_amplitude(n, x, p)?;
    Ok(log_pref.exp() * (coef_ai * ai + coef_aip * aip))
}

/// Soft-edge predictor at `x = 0`.
pub fn airy_edge0_asymptotic(
    n: usize,
    x: f64,
    p: &WeightParams,
    variant: AiryVariant,
    cfg: &AsymConfig,
) -> Result<f64> {
    let c = EdgeAsymptoticsContext::left(n, x, p)?;
    let (ai, aip) = cfg.specfun.airy_ai_pair(c.xi)?;
    let a = c.bessel_arg;
    let (s3, c3) = c.theta_main.sin_cos();
    let lead = match variant {
        AiryVariant::Printed => c.d11,
        AiryVariant::Symmetric => c.d12,
    };
    let coef_ai = s3 * c.d11 + c3 * (c.b * c.d11 + c.d21) / a;
    let coef_aip = s3 * lead + c3 * (c.b * c.d12 - c.d22) / a;
    let log_pref = 0.5 * PI.ln() + 0.5 * a.ln() + log_amplitude(n, x, p)?
        - 0.5 * std::f64::consts::LN_2;
    Ok(log_pref.exp() * (coef_ai * ai + coef_aip * aip))
}
