use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("quotient is infinite: column span has rank {rank} < {dim}")]
    InfiniteQuotient { rank: usize, dim: usize },

    #[error("orbit exceeded cap of {cap} elements")]
    OrbitCapExceeded { cap: usize },

    #[error("group of order {order} exceeds enumeration cap {cap}")]
    GroupCapExceeded { order: u128, cap: usize },

    #[error("matrix is not an involution")]
    NotInvolution,

    #[error("Laurent polynomials live in different rings")]
    RingMismatch,

    #[error("Hilbert basis search frontier exceeded cap {cap}")]
    Divergence { cap: usize },

    #[error("factorization fiber exceeded cap {cap}")]
    FiberCapExceeded { cap: usize },

    #[error("vector is not in the span of the roots")]
    NotInRootSpan,

    #[error("matrix entry does not fit compact storage")]
    EntryOverflow,

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
