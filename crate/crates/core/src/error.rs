use thiserror::Error;

use crate::quadrature::QuadratureError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of a formula (zero momentum, non-positive energy, ...).
    #[error("domain error in {operation}: {reason}")]
    Domain { operation: &'static str, reason: String },

    #[error("integral `{integral}` failed: {source}")]
    Quadrature {
        integral: String,
        #[source]
        source: QuadratureError,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown configuration key `{key}` (line {line})")]
    UnknownKey { key: String, line: usize },

    #[error("simulation: {0}")]
    Simulation(String),
}

impl Error {
    pub(crate) fn domain(operation: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            operation,
            reason: reason.into(),
        }
    }

    pub(crate) fn quadrature(integral: impl Into<String>) -> impl FnOnce(QuadratureError) -> Self {
        let integral = integral.into();
        move |source| Error::Quadrature { integral, source }
    }

    /// True for failures of the numerical engine as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Quadrature { .. } | Error::Simulation(_))
    }
}
