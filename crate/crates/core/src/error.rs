use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point set is empty")]
    EmptySet,

    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(usize),

    #[error("point {point} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        point: usize,
        expected: usize,
        got: usize,
    },

    #[error("coordinate out of half-open range [0,1): point {point}, axis {axis}, value {value}")]
    CoordinateOutOfRange { point: usize, axis: usize, value: f64 },

    #[error("weight count mismatch: {points} points but {weights} weights")]
    WeightCountMismatch { points: usize, weights: usize },

    #[error("weight {index} is not finite")]
    NonFiniteWeight { index: usize },

    #[error("invalid dyadic index: {0}")]
    InvalidIndex(String),

    #[error("resource budget exceeded: {required} units requested, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
