use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("not a Dynkin quiver: {0}")]
    NotDynkin(String),

    #[error("trivial null space: no nonzero kernel vector exists")]
    TrivialNullSpace,

    #[error("indecomposability is only certified over the rationals")]
    NotCertified,

    #[error("zero module has no indecomposability verdict")]
    ZeroModule,

    #[error("splitting stalled after {tries} endomorphisms on a module of dimension {dim} that is not certified indecomposable")]
    SplittingStalled { tries: usize, dim: usize },

    #[error("dimension vector {0:?} of a summand is not a positive root")]
    NotARoot(Vec<u64>),

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
