use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    #[error("numerical failure at iteration {iteration}: non-finite factor entry")]
    NumericalFailure { iteration: usize },
}
