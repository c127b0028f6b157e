use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at {0}")]
    Pole(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("no convergence after {terms} terms (partial sum {partial}, last term magnitude {last_term:e})")]
    Convergence {
        terms: usize,
        partial: Complex64,
        last_term: f64,
    },

    #[error("asymptotic series starts diverging before {requested} terms; optimal truncation is {optimal}")]
    Truncation { requested: usize, optimal: usize },

    #[error("invalid input: {0}")]
    Spec(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::Spec(msg.into())
    }
}
