use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("matrices {i} and {j} do not commute (commutator norm {norm:e})")]
    NotCommuting { i: usize, j: usize, norm: f64 },

    #[error("matrix {index} is not a contraction (norm {norm})")]
    NotContraction { index: usize, norm: f64 },

    #[error("effect {index} is not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotPsd { index: usize, min_eig: f64 },

    #[error("polytope has no facet (H-)representation; supply facets")]
    MissingFacets,

    #[error("polytope has no vertex (V-)representation; supply vertices")]
    MissingVertices,

    #[error("{what} = {value} exceeds the supported maximum {max}")]
    TooLarge { what: &'static str, value: usize, max: usize },

    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,

    #[error("lambda matrix {index} is not rank one (singular value ratio {ratio:e})")]
    NotRankOne { index: usize, ratio: f64 },

    #[error("identity not in convex hull of the lambda family")]
    IdentityNotInHull,

    #[error("linear program undecided after {iterations} pivots")]
    LpUndecided { iterations: usize },

    #[error("frame is not tight (deviation {deviation:e})")]
    NotTight { deviation: f64 },

    #[error("frame vectors do not share a common norm (spread {spread:e})")]
    NotEqualNorm { spread: f64 },

    #[error("frame has {n} vectors, above the symmetry search cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
