use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Hermite degree {degree} exceeds the supported maximum {max}")]
    DegreeLimit { degree: usize, max: usize },

    #[error("factorial argument {n} exceeds the supported maximum {max}")]
    FactorialRange { n: usize, max: usize },

    #[error("quantum numbers ({n}, {m}) outside the supported range 0..={max}")]
    QuantumNumber { n: usize, m: usize, max: usize },

    #[error("invalid {name}: {reason}")]
    Domain { name: &'static str, reason: String },

    #[error("quadrature order {order} outside 1..={max}")]
    InvalidOrder { order: usize, max: usize },

    #[error("Newton iteration for root {root} of H_{order} did not converge")]
    RuleGeneration { order: usize, root: usize },

    #[error("states have different deformation strengths ({a} vs {b})")]
    IncompatibleStates { a: f64, b: f64 },

    #[error("quadrature order {order} too small: at least {required} needed for exact integration")]
    Exactness { order: usize, required: usize },

    #[error("insufficient resolution: {reason}")]
    Resolution { reason: String },

    #[error("series cutoff {cutoff} leaves tail mass {tail:e} (limit {limit:e})")]
    Truncation { cutoff: usize, tail: f64, limit: f64 },
}

impl Error {
    pub(crate) fn domain(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { name, reason: reason.into() }
    }
}
