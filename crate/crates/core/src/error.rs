use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("fewer than three distinct points or all points collinear")]
    DegenerateInput,
    #[error("vertex cycle is not convex and counterclockwise")]
    NotConvex,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("quasi-polynomial fit disagrees with lattice counts at n = {n}")]
    FitVerificationFailure { n: u64 },
    #[error("zero vector has no lattice length")]
    ZeroVector,
    #[error("region lies entirely on the fixed line of the map")]
    DegenerateSplit,
    #[error("base point of an affine piecewise map must be a lattice point")]
    NonLatticeBase,
    #[error("(I, b) = ({interior}, {boundary}) is not realizable by an integral polygon")]
    NotAdmissible { interior: u64, boundary: u64 },
    #[error("no polygon found within search bound {bound}")]
    SearchExhausted { bound: i64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("glued polygon is not convex")]
    ConvexityFailure,
    #[error("origin is not in the interior of the polygon")]
    OriginNotInterior,
    #[error("no lattice point of the boundary is a vertex")]
    NoLatticeVertex,
    #[error("invalid generator word: {0}")]
    InvalidWord(String),
    #[error("path passes through the origin")]
    OriginOnPath,
}

impl Error {
    /// Errors caused by bad input rather than an internal inconsistency.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::FitVerificationFailure { .. } | Error::ConvexityFailure)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
