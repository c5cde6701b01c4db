use thiserror::Error;

/// Errors raised by the exact and numerical engines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or inconsistent input (dimension mismatch, bad word, bad fixture).
    #[error("input error: {0}")]
    Input(String),
    /// A subspace expected to contain another does not.
    #[error("containment error: vector {index} of the smaller space is not in the larger space")]
    Containment { index: usize },
    /// A parameter is outside the range an operation supports.
    #[error("range error: {0}")]
    Range(String),
    /// A feasibility bound was exceeded.
    #[error("resource error: {0}")]
    Resource(String),
    /// A value is requested outside the domain where it is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A point or path lies outside the region where q-series can be evaluated.
    #[error("evaluation-domain error: {0}")]
    EvaluationDomain(String),
    /// Adaptive quadrature did not converge within its depth budget.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// An internal guard fired; indicates a bug rather than bad input.
    #[error("internal error: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Input(format!("json: {e}"))
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
