use thiserror::Error;

/// Every failure the library can report.
///
/// Points are carried as already formatted coordinate strings so the error
/// type does not depend on the field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("shape error: {0}")]
    ShapeError(String),
    #[error("size budget exceeded: {0}")]
    SizeError(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("interpolation nodes are not distinct: {0}")]
    DegenerateSampler(String),
    #[error("sampler disagrees with the degree {bound} interpolant at {point:?}")]
    DegreeBoundViolated { bound: u32, point: Vec<String> },
    #[error("budget of {0} pair reductions exhausted")]
    BudgetExceeded(u64),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("corank {corank} at the point is below the queried {k}")]
    NotOnStratum { corank: usize, k: usize },
    #[error("corank {corank} differs from the queried {k}")]
    NotOnOpenStratum { corank: usize, k: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("form has rank {0}, expected at most 1")]
    NotRankOne(usize),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("symmetroids need an odd matrix size, got {0}")]
    EvenSizeNotSupported(usize),
    #[error("frame drops rank at {0:?}")]
    FrameDegenerate(Vec<String>),
    #[error("reduction hypothesis fails at {point:?}: {reason}")]
    HypothesisViolated { point: Vec<String>, reason: String },
    #[error("auxiliary Lagrangian is not transverse at {0:?}")]
    NotTransverse(Vec<String>),
    #[error("subspace is not Lagrangian")]
    NotLagrangian,
    #[error("point lies on the exceptional locus of the reduction")]
    SigmaOne,
    #[error("dim(A meets the hyperplane cube) = {0} exceeds 2")]
    NotGMRange(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
