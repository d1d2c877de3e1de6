use thiserror::Error;

/// Failure of one of the quandle axioms, carrying the lexicographically
/// first witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("table is not {size}x{size} or has an entry out of range at ({x},{y})")]
    MalformedTable { size: usize, x: usize, y: usize },
    #[error("idempotence fails: {0}*{0} != {0}")]
    NotIdempotent(u32),
    #[error("right translation by {0} is not a bijection")]
    NotRightInvertible(u32),
    #[error("self-distributivity fails at x={0}, y={1}, z={2}")]
    NotSelfDistributive(u32, u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("polynomial is not monic modulo {0}")]
    NonMonic(u64),
    #[error("quotient polynomial must have degree at least 1")]
    EmptyPoly,
    #[error("ring has {0} elements, more than the supported maximum")]
    RingTooLarge(u128),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gram matrix is not alternating: diagonal entry {0} is nonzero")]
    NonzeroDiagonal(usize),
    #[error("gram matrix is not alternating: entries ({0},{1}) and ({1},{0}) are not negatives")]
    NotSkewSymmetric(usize, usize),
    #[error("the standard form requires an even rank, got {0}")]
    OddRankStandard(usize),
    #[error("invalid form specification: {0}")]
    InvalidForm(String),
    #[error("quandle would have {size} elements, above the cap of {cap}")]
    SizeCapExceeded { size: u128, cap: usize },
    #[error("linear search space has {size} matrices, above the cap of {cap}")]
    SearchCapExceeded { size: u128, cap: u128 },
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("zero vector has no valuation or residue")]
    ZeroVector,
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
}

pub type Result<T> = std::result::Result<T, Error>;
