use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {q} outside the supported range [{min}, {max}]")]
    OrderOutOfRange { q: u64, min: u64, max: u64 },
    #[error("element index {index} out of range for F_{q}")]
    ElementOutOfRange { index: u64, q: u64 },
    #[error("value is not in the base field (corrupted extension tables?)")]
    NotInBaseField,
    #[error("polynomial {0} is reducible over the base field")]
    Reducible(String),
    #[error("matrix is singular")]
    Singular,
    #[error("span of the triple has dimension {0}, expected 3")]
    DegenerateSpan(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("triple is not normalized as (I, C_f, Z) with Z e1 = e3")]
    NotNormalized,
    #[error("triple does not generate an MRD code")]
    NotMrd,
    #[error("inconsistent count: {0}")]
    InconsistentCount(String),
    #[error("operation not supported for q = {q}: {reason}")]
    Unsupported { q: u64, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
