use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameters outside the orthogonality regime: {0}")]
    NotOrthogonalRegime(String),

    #[error("argument outside the convergence region: {0}")]
    Region(String),

    #[error("pole in hypergeometric denominator parameter {0}")]
    Pole(f64),

    #[error("series did not converge within {max_terms} terms")]
    NonConvergence { max_terms: usize },

    #[error("branch violation: {0}")]
    Branch(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot parse number: {0:?}")]
    Parse(String),

    #[error("non-finite value {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
