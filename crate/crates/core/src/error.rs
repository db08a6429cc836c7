use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("recurrence coefficient r must be at least 1")]
    ZeroRecurrenceCoefficient,
    #[error("Lucas index {0} is out of range")]
    IndexOutOfRange(i64),
    #[error("gcd is only defined for positive indices, got ({0}, {1})")]
    NonPositiveIndex(u64, u64),
    #[error("coefficient bound X must be at least 1")]
    ZeroCoefficientBound,
    #[error("coefficient {0} must be nonzero")]
    ZeroCoefficient(&'static str),
    #[error("malformed exponent tuple: {0}")]
    MalformedExponents(String),
    #[error("index cap {cap} exceeds the brute-force limit {limit}")]
    IndexCapTooLarge { cap: u64, limit: u64 },
    #[error("malformed report: {0}")]
    MalformedReport(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
