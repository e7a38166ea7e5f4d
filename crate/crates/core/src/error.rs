use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Arithmetic on already-validated operands panics on
/// internal misuse (domain mixing inside a single matrix, say); everything a
/// caller can plausibly trigger comes back as one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("prime field F_{modulus} too small here (need characteristic 0 or > {needed})")]
    SmallCharacteristic { modulus: u64, needed: usize },
    #[error("not a nilpotent pair: (xy)^{power} != 0")]
    NotNilpotent { power: usize },
    #[error("coset is not closed: tau(g) is not semisimple")]
    NotClosed,
    #[error("character product must be 1, got {0}")]
    ProductNotOne(String),
    #[error("exponent {halves}/2 is not an integer")]
    NonIntegralExponent { halves: i64 },
    #[error("unsupported in domain {domain}: {what}")]
    Unsupported { domain: String, what: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
