use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the Gamma function at z = {0}")]
    Pole(String),
    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument outside the supported domain: {0}")]
    Domain(String),
    #[error("no sign change isolated on [{lo}, {hi}] while searching for {what}")]
    Bracketing { lo: f64, hi: f64, what: String },
    #[error("sign violation: {0}")]
    SignViolation(String),
    #[error("declared decay exponent {0} is too slow for integration against the spectral measure")]
    TailDivergence(f64),
    #[error("refinement budget exhausted: {0}")]
    Budget(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
