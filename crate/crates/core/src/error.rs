use std::fmt;

use thiserror::Error;

/// A row or column of a Cayley table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Col(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {i}"),
            Line::Col(j) => write!(f, "column {j}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("table dimensions do not match order {order}")]
    BadDimensions { order: usize },
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("not a Latin square: {0} is not a permutation")]
    NotLatin(Line),
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("permutation degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("group closure capped after {0} elements")]
    Capped(usize),
    #[error("subset is not a subloop")]
    NotASubloop,
    #[error("subloop is not normal")]
    NotNormal,
    #[error("quotient operation is ill-defined")]
    IllDefined,
    #[error("unknown variety `{0}`")]
    UnknownVariety(String),
    #[error("invalid identity: {0}")]
    BadIdentity(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
    #[error("invalid search spec: {0}")]
    InvalidSpec(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("no witness found in the window; enlarge it")]
    WitnessNotFoundInWindow,
}

pub type Result<T> = std::result::Result<T, Error>;
