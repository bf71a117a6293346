use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("fractional order must lie in (0, 1], got {0}")]
    InvalidOrder(f64),

    #[error("{function} is undefined at {x}")]
    Domain { function: &'static str, x: f64 },

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("series term overflowed at index {index}")]
    Overflow { index: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("delays {tau1} and {tau2} (horizon {horizon}) admit no common step in [{h_min}, {h_request}]")]
    IncommensurableDelays {
        tau1: f64,
        tau2: f64,
        horizon: f64,
        h_request: f64,
        h_min: f64,
    },

    #[error("history function is not finite at t = {t}")]
    NonFiniteHistory { t: f64 },

    #[error("coefficient {name} is not finite ({value})")]
    NonFiniteCoefficient { name: &'static str, value: f64 },

    #[error("degenerate coefficients a = {a}, b = {b}: both must be non-zero for two-delay critical curves")]
    DegenerateCoefficients { a: f64, b: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
