use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown generator `{name}` at position {pos} (algebra has {n} generators)")]
    UnknownGenerator { name: String, pos: usize, n: usize },

    #[error("exponent must be at least 1 (position {pos})")]
    BadExponent { pos: usize },

    #[error("generator count mismatch: {0} vs {1}")]
    GeneratorMismatch(usize, usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("relation is not homogeneous")]
    NotHomogeneous,

    #[error("relation has degree {0}; degree at least 2 is required")]
    RelationDegree(usize),

    #[error("subspace is not contained in the ambient subspace")]
    NotNested,

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("power series denominator vanishes at t = 0")]
    VanishingDenominator,

    #[error("power series expansion has a non-integral coefficient at degree {0}")]
    NonIntegral(usize),

    #[error("unsupported generator count {0}")]
    Unsupported(usize),

    #[error("zero polynomial")]
    ZeroPolynomial,
}

pub type Result<T> = std::result::Result<T, Error>;
