use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponent {name} = {value} must be strictly positive")]
    NonPositiveExponent { name: &'static str, value: f64 },
    #[error("perturbation strength t = {0} must be nonnegative")]
    NegativeT(f64),
    #[error("argument {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },
    #[error("working precision of {0} bits is below the 128-bit minimum")]
    InvalidPrecision(u32),
    #[error("Newton iteration for the {m}-point Gauss-Legendre rule did not converge")]
    ConvergenceFailure { m: usize },
    #[error("invalid panel grading: {0}")]
    InvalidGrading(String),
    #[error("integrand is not finite at node {node}")]
    NonFiniteIntegrand { node: f64 },
    #[error("quadrature rule has {nodes} nodes, at least {required} needed for degree {degree}")]
    InsufficientQuadrature {
        nodes: usize,
        required: usize,
        degree: usize,
    },
    #[error("squared norm h_{n} is not positive; raise the precision or refine the rule")]
    LostPositivity { n: usize },
    #[error("degree {n} exceeds the table maximum {max}")]
    DegreeOutOfRange { n: usize, max: usize },
    #[error("scaled point {value} falls outside (0, 1)")]
    ScaledPointOutOfDomain { value: f64 },
    #[error("Bessel order {0} must exceed -1")]
    OrderOutOfRange(f64),
    #[error("z = {re}{im:+}i lies within {delta} of the cut [0, 1]")]
    TooCloseToCut { re: f64, im: f64, delta: f64 },
    #[error("regime violation: {0}")]
    RegimeViolation(String),
    #[error("malformed recurrence table: {0}")]
    TableFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
