use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate bilinear form: {0}")]
    DegenerateForm(String),

    #[error("empty root set")]
    EmptyRootSet,

    #[error("inadmissible Cartan type {0}")]
    InadmissibleType(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} is not integral")]
    NotIntegral(String),

    #[error("{what}: {needed} exceeds cap {cap}")]
    CapExceeded { what: String, needed: String, cap: u64 },

    #[error("bracket closure violated: {a} + {b} = {sum} ({detail})")]
    ClosureViolation { a: String, b: String, sum: String, detail: String },

    #[error("half-sum bookkeeping failed: {0}")]
    BadHalfSums(String),

    #[error("invalid symmetric pair: {0}")]
    InvalidPair(String),

    #[error("space {0} carries no spin structure")]
    NotSpin(String),

    #[error("space {0} is not Kähler")]
    NotKahler(String),

    #[error("space {0} is not quaternion-Kähler")]
    NotQk(String),

    #[error("Wolf condition violated by root {root}: {reason}")]
    WolfViolation { root: String, reason: String },

    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("unknown space {0:?}")]
    UnknownSpace(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("catalog error: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
