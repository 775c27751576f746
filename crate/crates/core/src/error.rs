use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("one-parameter subgroup is trivial (all weights equal)")]
    TrivialSubgroup,
    #[error("weights of a one-parameter subgroup of SL must sum to zero (sum is {0})")]
    NotSpecialLinear(i64),
    #[error("malformed filtration: {0}")]
    MalformedFiltration(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("profile does not match filtration: {0}")]
    ProfileMismatch(String),
    #[error("stability parameter must be positive")]
    InvalidDelta,
    #[error("malformed flag: {0}")]
    MalformedFlag(String),
    #[error("degenerate flag: {0}")]
    DegenerateFlag(String),
    #[error("flag is not generated by coordinate vectors")]
    NotCoordinateFlag,
    #[error("invalid rank {rank} for Dynkin family {family}")]
    InvalidRank { family: char, rank: u32 },
    #[error("{0} is not an exceptional Dynkin type")]
    NotExceptional(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("point has empty support")]
    EmptySupport,
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
