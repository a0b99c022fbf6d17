use thiserror::Error;

/// Errors raised by field construction, form manipulation and the deciders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field of size {p}^{f} exceeds the table budget of {limit} elements")]
    FieldTooLarge { p: u64, f: u32, limit: u64 },
    #[error("characteristic {p} does not exceed the degree {d}")]
    Characteristic { p: u64, d: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("coefficient {0} is zero")]
    ZeroCoefficient(usize),
    #[error("element {value} is outside the field of size {q}")]
    ElementOutOfRange { value: u64, q: u64 },
    #[error("diagonal isomorphism classification needs degree at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("residue characteristic {p} divides the degree {d}")]
    WildCase { p: u64, d: u32 },
    #[error("term budget of {limit} exceeded")]
    TermBudget { limit: usize },
    #[error("search budget of {limit} evaluations exceeded")]
    SearchBudget { limit: u64 },
    #[error("input form is isotropic: {0}")]
    IsotropicInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
