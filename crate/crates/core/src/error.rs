use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("point must have at least one coordinate")]
    EmptyPoint,

    #[error("non-finite coordinate {value} at index {index}")]
    NonFiniteCoordinate { index: usize, value: f64 },

    #[error("invalid bounds in dimension {dim}: lower {lower} > upper {upper}")]
    InvertedBounds { dim: usize, lower: f64, upper: f64 },

    #[error("no memory to select from")]
    EmptyMemory,

    #[error("ill-conditioned kernel matrix")]
    IllConditioned,

    #[error("objective returned non-finite value {value} at {point:?}")]
    NonFiniteObjective { point: Vec<f64>, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("needle would be empty")]
    EmptyNeedle,

    #[error("target column `{0}` not found")]
    MissingTargetColumn(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("no valid rows in dataset ({dropped} dropped)")]
    NoValidRows { dropped: usize },

    #[error("{0} must be strictly positive")]
    NonPositive(&'static str),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
