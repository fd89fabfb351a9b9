//! Exact-arithmetic toolkit for tropical curves metrized by partially ordered
//! monoids: intersection pairings, bounded monodromy, trivializing
//! subdivisions, the tropical Jacobian and Picard group, and quasistable cell
//! decompositions with an exact tiling verifier.
//!
//! All order decisions are made with arbitrary-precision rational arithmetic;
//! there is no floating point anywhere in the decision paths.

pub mod cells;
pub mod curve;
pub mod error;
pub mod geom;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod monodromy;
pub mod ordmonoid;
pub mod picard;
pub mod plfun;
pub mod rat;
pub mod svg;

pub use error::Error;
pub use rat::{LatVec, Q};

/// Execution strategy for the data-parallel operations (cell enumeration and
/// tiling verification). With the `parallel` feature enabled the default entry
/// points use rayon; `Sequential` forces the fallback path, which is also the
/// only path compiled without the feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[cfg(feature = "parallel")]
    Rayon,
}

impl Default for Parallelism {
    #[cfg(feature = "parallel")]
    fn default() -> Self {
        Parallelism::Rayon
    }
    #[cfg(not(feature = "parallel"))]
    fn default() -> Self {
        Parallelism::Sequential
    }
}
