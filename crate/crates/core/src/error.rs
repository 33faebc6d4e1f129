use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("index {index} is outside 0..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("parts are not weakly decreasing: {0:?}")]
    NotAPartition(Vec<u32>),

    #[error("q-binomial [{m} choose {p}] requires p <= m")]
    BinomialRange { m: u32, p: u32 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("weight {0} is not in the root lattice")]
    NotInRootLattice(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("level must be positive, got {0}")]
    NonPositiveLevel(i64),

    #[error("content character {0:?} is not dominant for the given charge")]
    NotDominantCharacter(Vec<u32>),

    #[error("pair is not reduced: condition ({condition}) fails at position {position}")]
    NotReduced { condition: u8, position: usize },

    #[error("Freudenthal recursion produced a non-integral multiplicity at {0}")]
    NonIntegralMultiplicity(String),
}
