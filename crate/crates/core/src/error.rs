use thiserror::Error;

/// Every failure the library reports.
///
/// Errors are values: callers such as the CLI map them onto exit codes via
/// [`Error::is_unsupported`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("size limit exceeded: {what} needs {needed}, limit is {limit}")]
    SizeLimitExceeded { what: &'static str, needed: u128, limit: u128 },
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("polyhedron is not pointed (its constraint matrix has rank below n)")]
    NotPointed,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is not full-dimensional")]
    NotFullDimensional,
    #[error("representation is not minimal: redundant rows {redundant:?}, duplicate rows {duplicates:?}")]
    NotMinimal { redundant: Vec<usize>, duplicates: Vec<(usize, usize)> },
    #[error("polytope is not simple: vertex {vertex} lies on {tight} facets in dimension {dim}")]
    NotSimple { vertex: usize, tight: usize, dim: usize },
    #[error("duplicate inequality rows {0} and {1}")]
    DuplicateRows(usize, usize),
    #[error("dimension {0} is outside the supported range 1..=4")]
    DimensionTooHigh(usize),
    #[error("point set is affinely degenerate: {0}")]
    DegenerateInput(String),
    #[error("point is not in the polyhedron")]
    PointNotInPolyhedron,
    #[error("point is not a vertex of the polyhedron")]
    NotAVertex,
    #[error("direction is not a circuit of the polyhedron")]
    NotACircuit,
    #[error("direction is not feasible at the given point")]
    DirectionNotFeasible,
    #[error("step {0} of the walk uses a direction that is infeasible or not a circuit")]
    InfeasibleDirection(usize),
    #[error("no constraint bounds the step; the direction is a recession direction")]
    UnboundedDirection,
    #[error("exploration budget of {0} points exhausted")]
    BudgetExceeded(usize),
    #[error("polytope has a non-integral vertex")]
    NotIntegralPolytope,
    #[error("circuit distances are unsupported on a GCW polytope")]
    GcwUnsupported,
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("invalid rank function: {0}")]
    InvalidRankFunction(String),
    #[error("constructed polytope failed its own recognition check: {0}")]
    RecognitionSelfCheckFailed(String),
    #[error("infeasible clustering: {0}")]
    InfeasibleClustering(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that mean "valid input, but outside what this
    /// operation supports" rather than malformed input.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::Unbounded
                | Error::NotPointed
                | Error::NotSimple { .. }
                | Error::NotMinimal { .. }
                | Error::NotFullDimensional
                | Error::BudgetExceeded(_)
                | Error::SizeLimitExceeded { .. }
                | Error::GcwUnsupported
                | Error::DimensionTooHigh(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
