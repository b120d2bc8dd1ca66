use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("index out of range: {index} (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("indices must be strictly increasing: {0:?}")]
    IndicesNotIncreasing(Vec<usize>),

    #[error("matrix is singular")]
    Singular,

    #[error("group element must have determinant 1, found {0}")]
    NotUnimodular(String),

    #[error("chart singularity: {0}")]
    ChartSingularity(String),

    #[error("pair is separated by invariants, so it is not in the separating variety")]
    NotInSeparatingVariety,

    #[error("pair is not in the nullcone squared")]
    NotNullconePair,

    #[error("tuple is not upper-triangular in component {0}")]
    NotUpperTriangular(usize),

    #[error("unsupported rank l = {0}; only l = 2 and l = 3 are supported")]
    UnsupportedRank(usize),

    #[error("subcase requires prior SL-reduction: last row must be zero")]
    NotReduced,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("all {attempts} sample points hit chart singularities")]
    AllSamplesSingular { attempts: usize },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
