use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("non-finite comparison")]
    NonFinite,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("projection onto zero vector")]
    ProjectionOntoZero,
    #[error("Selberg set must contain nonzero vectors")]
    SelbergZeroVector,
    #[error("exact comparison requires exact backend")]
    ExactBackendRequired,
    #[error("infeasible constraint set: {0}")]
    InfeasibleConstraints(String),
    #[error("unknown entry id: {0}")]
    UnknownEntry(String),
    #[error("constraint violation for entry {entry}: {detail}")]
    ConstraintViolation { entry: String, detail: String },
    #[error("chain link {0} out of range")]
    LinkOutOfRange(usize),
    #[error("identity input error: {0}")]
    IdentityInput(String),
    #[error("zero vector argument: {0}")]
    ZeroVector(&'static str),
    #[error("modulus is not rational on the exact backend")]
    IrrationalModulus,
}
