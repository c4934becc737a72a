use thiserror::Error;

/// Errors raised anywhere in the twist pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid conductor {0}")]
    InvalidConductor(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {exponent} is not a unit modulo {conductor}")]
    NotAUnit { exponent: u64, conductor: u64 },
    #[error("radical field mismatch: {0}")]
    SpecMismatch(String),
    #[error("invalid radical field: {0}")]
    InvalidRadicalField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("group closure exceeds bound {0}")]
    ClosureBound(usize),
    #[error("search budget of {0} table lookups exhausted")]
    BudgetExhausted(u64),
    #[error("galois action does not stabilize the automorphism group: {0}")]
    UnstableAction(String),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("embedding problem is not exact: {0}")]
    NotExact(String),
    #[error("outside the solvable Kummer family: {0}")]
    OutsideKummerFamily(String),
    #[error("frobenius element invalid: {0}")]
    InvalidFrobenius(String),
    #[error("cocycle law violated: {0}")]
    CocycleLaw(String),
    #[error("representation law violated: {0}")]
    RepresentationLaw(String),
    #[error("fixed subspace has dimension {found}, expected {expected}")]
    FixedDimension { found: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
