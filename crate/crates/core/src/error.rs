use crate::rat::LatVec;

#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("generators must be nonzero, integral and pairwise distinct")]
    BadGenerator,

    #[error("monoid is not sharp")]
    NotSharp,

    #[error("element is not in the monoid")]
    NotInMonoid,

    #[error("weight matrix is not order-preserving on the monoid generators")]
    NotOrderPreserving,

    #[error("element is not positive in the given order")]
    NotPositive,

    #[error("weight matrix must have full column rank for this operation")]
    DeficientRank,

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("curve is not compact (retraction undefined on some flag)")]
    NotCompact,

    #[error("curve is disconnected")]
    Disconnected,

    #[error("subdivision point is not strictly interior to the edge")]
    NotInterior,

    #[error("contraction would collapse a dangling edge")]
    DanglingContraction,

    #[error("piecewise linear data is inconsistent: {0}")]
    InvalidPLFunction(String),

    #[error("monodromy is not bounded on cycle {cycle:?} (value {value})")]
    Unbounded { cycle: Vec<i64>, value: LatVec },

    #[error("monodromy is not bounded")]
    NotBounded,

    #[error("slopes do not trivialize the divisor: {0}")]
    BadTrivialization(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("classes live on different curves")]
    CurveMismatch,

    #[error("operation requires an ambient monoid of rank 1")]
    RankNotOne,

    #[error("tiling verification is only available for genus 1 and 2")]
    GenusUnsupported,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
