use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operator eigenvalue vanishes at degree {degree}")]
    SingularEigenvalue { degree: usize },

    #[error("eigenvalue pole: A(k)B(k) = 0 at k = {k}")]
    Pole { k: i64 },

    #[error("insufficient precision: requested coefficient {requested} but the series is truncated at {truncation}")]
    InsufficientPrecision { requested: i64, truncation: i64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("theory violation: {0}")]
    TheoryViolation(String),

    #[error("determinant is not constant: degree {degree}")]
    NonconstantDeterminant { degree: usize },

    #[error("factorization mismatch: {0}")]
    FactorizationMismatch(String),

    #[error("series diverges at the requested argument: {0}")]
    Divergence(String),

    #[error("criterion not satisfied: V = {v} is not larger than epsilon = {eps}")]
    CriterionNotSatisfied { v: f64, eps: f64 },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Hypothesis(_) | Error::SingularEigenvalue { .. } | Error::Pole { .. } => 2,
            Error::TheoryViolation(_) | Error::FactorizationMismatch(_) => 3,
            Error::CriterionNotSatisfied { .. } | Error::Inconclusive(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
