use thiserror::Error;

use crate::recognize::NotPerfect;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty permutation")]
    Empty,
    #[error("not a bijection on 1..{n}: {detail}")]
    NotABijection { n: usize, detail: String },
    #[error("invalid integer {0:?}")]
    InvalidToken(String),
    #[error("position {position} out of range 1..{max}")]
    PositionOutOfRange { position: usize, max: usize },
    #[error("location {location} out of range 1..{max}")]
    LocationOutOfRange { location: usize, max: usize },
    #[error("pattern of size {pattern} is larger than host of size {host}")]
    PatternLargerThanHost { pattern: usize, host: usize },
    #[error("family parameter k={0} is below 4")]
    KTooSmall(usize),

    #[error("row {row} has overlapping swaps")]
    OverlappingSwaps { row: usize },
    #[error("row {row} is not strictly increasing")]
    UnsortedRow { row: usize },
    #[error("first and last rows must be empty")]
    NonEmptyBoundaryRow,
    #[error("tangle has no rows")]
    NoRows,
    #[error("tangle does not end at the identity")]
    DoesNotSolve,

    #[error("permutation contains 321 at positions {positions:?} (values {values:?})")]
    Contains321 {
        positions: [usize; 3],
        values: [usize; 3],
    },
    #[error("not a marking for the permutation: {0}")]
    NotAMarkingFor(String),
    #[error("marking is not balanced")]
    NotBalancedInput,
    #[error("permutation is not perfect: {0}")]
    NotPerfect(NotPerfect),

    #[error("input exceeds the search guard: {0}")]
    SizeGuard(String),
    #[error("census size {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("invalid render options: {0}")]
    InvalidRenderOptions(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
