use thiserror::Error;

/// Errors raised by estimation, sampling and testing routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("too few observations: need at least {required}, got {actual}")]
    TooFewObservations { required: usize, actual: usize },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "non-positive constrained variance: common rho {rho_common} times r = {r} is not below 1"
    )]
    NonPositiveVariance { rho_common: f64, r: f64 },

    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    #[error("degenerate bootstrap: all {0} replicate statistics are identical")]
    DegenerateBootstrap(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
