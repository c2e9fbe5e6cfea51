use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the solvers and constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("distance lists have different lengths ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },

    /// The distances cannot come from any regular polygon and point.
    #[error("distances are not realizable: {reason}")]
    Realizability { reason: String, value: f64 },

    #[error("triangle inequality violated: largest side {largest} exceeds {sum_of_others}")]
    TriangleInequality { largest: f64, sum_of_others: f64 },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("auxiliary circle misses the target circle: anchor distance {anchor} outside [{lower}, {upper}]")]
    NoIntersection { anchor: f64, lower: f64, upper: f64 },

    #[error("cosine argument {value} outside [-1, 1]")]
    Range { value: f64 },

    #[error("circles are concentric with equal radii")]
    Concentric,

    #[error("polygons do not share a vertex (closest pair {gap} apart)")]
    SharedVertex { gap: f64 },

    #[error("polygons are congruent (radii {r1} and {r2})")]
    Congruent { r1: f64, r2: f64 },
}

impl Error {
    /// Stable machine-readable code used in JSON error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::Realizability { .. } => "REALIZABILITY",
            Error::TriangleInequality { .. } => "TRIANGLE_INEQUALITY",
            Error::Degenerate(_) => "DEGENERATE",
            Error::NoIntersection { .. } => "NO_INTERSECTION",
            Error::Range { .. } => "RANGE",
            Error::Concentric => "CONCENTRIC",
            Error::SharedVertex { .. } => "SHARED_VERTEX",
            Error::Congruent { .. } => "CONGRUENT",
        }
    }
}
