//! Orthogonal polynomials, Christoffel-Darboux kernels and their asymptotics
//! for the weight `x^alpha (1-x)^beta exp(-t / (x (1-x)))` on `[0, 1]`.
//!
//! - [`mpquad`]: graded composite Gauss-Legendre rules in MPFR precision.
//! - [`opseq`]: recurrence coefficients by the Stieltjes procedure.
//! - [`cdkernel`]: the kernel `K_n` and its scaled forms.
//! - [`specfun`]: Bessel and Airy functions.
//! - [`asym`]: leading-order predictors off the interval, in the bulk and at the edges.
//! - [`unikernels`]: sine, Bessel and Airy limit kernels and comparisons.

// Negated comparisons are used deliberately so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asym;
pub mod cdkernel;
pub mod error;
pub mod mpquad;
pub mod opseq;
pub mod specfun;
pub mod unikernels;
pub mod weight;

pub use asym::{AiryVariant, AsymConfig, Side};
pub use error::{Error, Result};
pub use mpquad::{PanelSpec, PrecisionConfig, QuadratureRule};
pub use opseq::{PolyEval, RecurrenceTable};
pub use specfun::SpecFunConfig;
pub use unikernels::{ErrorReport, ErrorRow, LimitKernelSpec, SoftEdgeConvention};
pub use weight::{validate_params, WeightParams};
