use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("matrix expects {expected} weights, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("weight {weight} for reviewer {reviewer:?} and paper {paper:?} is outside [0, 1]")]
    WeightOutOfRange {
        reviewer: String,
        paper: String,
        weight: f64,
    },

    #[error("pair ({paper:?}, {reviewer:?}) has zero weight and cannot be assigned")]
    ZeroWeightPair { paper: String, reviewer: String },

    #[error("pair ({paper:?}, {reviewer:?}) is assigned twice")]
    DuplicatePair { paper: String, reviewer: String },

    #[error("reviewer {reviewer:?} has {load} papers but capacity {capacity}")]
    CapacityExceeded {
        reviewer: String,
        load: usize,
        capacity: usize,
    },

    #[error("paper {paper:?} has {load} reviewers but at most {m} are allowed")]
    TooManyReviewers {
        paper: String,
        load: usize,
        m: usize,
    },

    #[error("similarity method {0} needs a rating table")]
    MissingRatings(&'static str),

    #[error("capacity list has {found} entries for {expected} reviewers")]
    CapacityLength { expected: usize, found: usize },

    #[error(
        "instance too large for exhaustive search: {papers} papers x m={m}, {reviewers} reviewers"
    )]
    TooLargeForOracle {
        papers: usize,
        reviewers: usize,
        m: usize,
    },

    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
}
