use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A non-finite coordinate appeared at the given iteration.
    #[error("iteration diverged at k = {iteration}")]
    Divergence { iteration: usize },

    #[error("eigenvalue estimate did not converge after {iterations} iterations (partial: min {lambda_min:e}, max {lambda_max:e})")]
    EigenNotConverged {
        iterations: usize,
        lambda_min: f64,
        lambda_max: f64,
    },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("minimizer unknown: {0}")]
    UnknownMinimizer(String),

    #[error("capability missing: {0}")]
    Capability(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("minimizer oracle failed: gradient ratio {ratio:e} after {iterations} iterations")]
    Oracle { iterations: usize, ratio: f64 },

    #[error("rate estimation failed: {0}")]
    Estimation(String),
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
