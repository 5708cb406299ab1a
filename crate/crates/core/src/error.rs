use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while building spaces, evaluating relations or running checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot build a space from zero rows")]
    EmptySpace,
    #[error("row {row}: duplicate point id {id:?}")]
    DuplicateId { row: usize, id: String },
    #[error("row {row} ({id:?}): expected {expected} features, found {found}")]
    ArityMismatch {
        row: usize,
        id: String,
        expected: usize,
        found: usize,
    },
    #[error("row {row} ({id:?}): feature vectors must have at least one component")]
    ZeroArity { row: usize, id: String },
    #[error("unknown point id {0:?}")]
    UnknownPoint(String),
    #[error("point set has {found} slots but the space has {expected} points")]
    ForeignSet { expected: usize, found: usize },

    #[error("unknown relation {0:?}")]
    UnknownRelation(String),
    #[error("unknown enlargement operator {0:?}")]
    UnknownEnlargement(String),
    #[error("invalid number {0:?}")]
    InvalidNumber(String),
    #[error("epsilon must be nonnegative, got {0}")]
    NegativeEpsilon(String),
    #[error("projection arity {m} out of range 1..={arity}")]
    ProjectionOutOfRange { m: usize, arity: usize },
    #[error("significant set contains {0} which is not the description of any point")]
    SignificantSetOutsideImage(String),
    #[error("convex hull relations support arity 1..=3, space has arity {0}")]
    UnsupportedArity(usize),
    #[error("unknown named set {0:?}")]
    UnknownSet(String),

    #[error("exhaustive checking of {size} points exceeds the subset cap of {cap}")]
    BudgetExceeded { size: usize, cap: usize },
    #[error("invalid check budget: {0}")]
    InvalidBudget(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("missing column {0:?}")]
    MissingColumn(String),
    #[error("row {row}, column {column:?}: cannot parse {value:?} as an integer feature")]
    NonNumericCell {
        row: usize,
        column: String,
        value: String,
    },
    #[error("unsupported image format magic {0:?}")]
    UnsupportedMagic(String),
    #[error("malformed image header: {0}")]
    MalformedHeader(String),
    #[error("truncated pixel data: expected {expected} samples, found {found}")]
    TruncatedPixels { expected: usize, found: usize },
    #[error("probe {probe} cannot read a {format} image")]
    ProbeMismatch {
        probe: &'static str,
        format: &'static str,
    },
    #[error("invalid probe: {0}")]
    InvalidProbe(String),
    #[error("region {name:?}: {reason}")]
    InvalidRegion { name: String, reason: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
