//! The two-sided Pollaczek-Jacobi weight
//! `w(x) = x^alpha (1 - x)^beta exp(-t / (x (1 - x)))` on `[0, 1]`.
//!
//! Everything is routed through the logarithm: the exponential factor
//! underflows `f64` already around `x = 1e-3` for `t = 1`.

use rug::ops::NegAssign;
use rug::Float;

use crate::error::{Error, Result};

/// Parameters `(alpha, beta, t)` of the weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightParams {
    pub alpha: f64,
    pub beta: f64,
    pub t: f64,
}

impl WeightParams {
    pub fn new(alpha: f64, beta: f64, t: f64) -> Result<Self> {
        validate_params(alpha, beta, t)
    }

    /// Parameters of the mirrored weight `x -> 1 - x`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
            t: self.t,
        }
    }

    /// Same exponents with a different perturbation strength.
    pub fn with_t(&self, t: f64) -> Result<Self> {
        validate_params(self.alpha, self.beta, t)
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }
}

pub fn validate_params(alpha: f64, beta: f64, t: f64) -> Result<WeightParams> {
    // NaN fails every comparison below, so test for positivity rather than `<= 0`.
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::NonPositiveExponent {
            name: "alpha",
            value: alpha,
        });
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::NonPositiveExponent {
            name: "beta",
            value: beta,
        });
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::NegativeT(t));
    }
    Ok(WeightParams { alpha, beta, t })
}

/// `alpha ln x + beta ln(1 - x) - t / (x (1 - x))` for `0 < x < 1`.
pub fn log_weight(x: f64, p: &WeightParams) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain {
            value: x,
            domain: "(0, 1)",
        });
    }
    let mut lw = p.alpha * x.ln() + p.beta * (-x).ln_1p();
    if p.t != 0.0 {
        lw -= p.t / (x * (1.0 - x));
    }
    Ok(lw)
}

/// The weight at `x` in `[0, 1]`; exactly zero at both endpoints.
pub fn weight(x: f64, p: &WeightParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            value: x,
            domain: "[0, 1]",
        });
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(log_weight(x, p)?.exp())
}

/// Extended-precision `log_weight`; the result carries the precision of `x`.
pub fn log_weight_mp(x: &Float, p: &WeightParams) -> Result<Float> {
    if !(*x > 0 && *x < 1) {
        return Err(Error::Domain {
            value: x.to_f64(),
            domain: "(0, 1)",
        });
    }
    let prec = x.prec();
    let one_minus = Float::with_val(prec, 1 - x);
    let mut lw = Float::with_val(prec, x.ln_ref()) * p.alpha;
    lw += Float::with_val(prec, one_minus.ln_ref()) * p.beta;
    if p.t != 0.0 {
        let mut pert = Float::with_val(prec, x * &one_minus);
        pert.recip_mut();
        pert *= p.t;
        pert.neg_assign();
        lw += pert;
    }
    Ok(lw)
}

/// Extended-precision weight; zero at the endpoints.
pub fn weight_mp(x: &Float, p: &WeightParams) -> Result<Float> {
    if *x < 0 || *x > 1 || x.is_nan() {
        return Err(Error::Domain {
            value: x.to_f64(),
            domain: "[0, 1]",
        });
    }
    if x.is_zero() || *x == 1 {
        return Ok(Float::new(x.prec()));
    }
    Ok(log_weight_mp(x, p)?.exp())
}

/// `sqrt(w(x))`, computed as `exp(log_weight / 2)` so it survives where `w` itself would not.
pub fn sqrt_weight_mp(x: &Float, p: &WeightParams) -> Result<Float> {
    if x.is_zero() || *x == 1 {
        return Ok(Float::new(x.prec()));
    }
    let mut lw = log_weight_mp(x, p)?;
    lw /= 2;
    Ok(lw.exp())
}
