use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("need at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("segment endpoints coincide")]
    DegenerateSegment,

    #[error("point set is not in general position")]
    NotGeneralPosition,

    #[error("face {0:?} is not a face of the triangulation")]
    FaceNotPresent([u32; 3]),

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: String,
        range: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("order-type file {path}: size {size} is not a multiple of the record size {record}")]
    RecordSize {
        path: PathBuf,
        size: u64,
        record: u64,
    },

    #[error("order-type record {index} is not in general position")]
    RecordNotGeneralPosition { index: usize },

    #[error("refusing to verify against an empty representative stream")]
    NoRepresentatives,

    #[error("no representative source available for n = {0}")]
    NoSource(usize),

    #[error("floor could not be certified for n = {n} at {bits} fractional bits")]
    Uncertified { n: u64, bits: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn out_of_range(what: &'static str, value: impl ToString, range: &str) -> Error {
    Error::OutOfRange {
        what,
        value: value.to_string(),
        range: range.to_string(),
    }
}
