use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("subset size {k} out of range for degree {degree}")]
    SubsetSizeOutOfRange { k: usize, degree: usize },

    #[error("rank {rank} out of range for {n}-subsets of {universe}")]
    RankOutOfRange { rank: u64, n: usize, universe: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid branch fiber: {0}")]
    InvalidBranchFiber(String),

    #[error(
        "{scenario}: degree {degree} over base genus {base_genus} with w = {w} gives {reason}"
    )]
    GenusValidation {
        scenario: String,
        degree: u64,
        base_genus: u64,
        w: u64,
        reason: &'static str,
    },

    #[error("infeasible scenario: {0}")]
    Infeasible(String),

    #[error("correspondence parameter {param} = {value} is below the minimum of 2")]
    ParameterTooSmall { param: &'static str, value: usize },

    #[error("monodromy does not preserve the fiber structure: {0}")]
    InvalidMonodromy(String),

    #[error("class action depends on the representative of class {class}")]
    RepresentativeDependence { class: usize },

    #[error("criterion hypothesis (a) fails: D^2 = {a}I + {b}D + cU has no factorization (1-g)(g+q-1) with integer q >= 2")]
    NoExponent { a: String, b: String },

    #[error("fixed-point count {0} is odd")]
    OddFixedPointCount(u64),

    #[error("exponent q = {0} is below 2")]
    ExponentTooSmall(String),

    #[error("negative dimension {0}")]
    NegativeDimension(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("scenario field `{field}`: {message}")]
    Schema { field: String, message: String },
}

impl Error {
    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { field: field.into(), message: message.into() }
    }
}
