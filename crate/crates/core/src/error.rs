use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("Wright series fails the convergence gate: margin {margin} <= -1")]
    ConvergenceGate { margin: f64 },

    #[error("series stopping rule did not fire within {cap} terms")]
    TermCapExceeded { cap: usize },

    #[error("numerator gamma pole at term {term}")]
    NumeratorPole { term: usize },

    #[error("non-finite series term at index {term}")]
    NonFinite { term: usize },

    #[error("invalid representation: {0}")]
    Construction(String),

    #[error("could not certify {digits} significant digits (relative error estimate {rel_err:e})")]
    Accuracy { digits: u32, rel_err: f64 },

    #[error("oracle methods disagree: bromwich {bromwich:e} vs mellin {mellin:e}")]
    OracleDisagreement { bromwich: f64, mellin: f64 },

    #[error("quadrature failed to converge: estimate {value:e} with error {abs_err:e}")]
    QuadratureFailure { value: f64, abs_err: f64 },

    #[error("moment of order {nu} diverges for alpha = {alpha}")]
    DivergentMoment { alpha: f64, nu: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
