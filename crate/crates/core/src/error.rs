use thiserror::Error;

use crate::enumerator::Refinement;
use crate::poset::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point count {points} exceeds the supported maximum of {max}")]
    TooManyPoints { points: usize, max: usize },

    #[error("arc ({from}, {to}) is out of range for {points} points")]
    ArcOutOfRange { from: usize, to: usize, points: usize },

    #[error("not a Hasse diagram: {0}")]
    InvalidHasse(Violation),

    #[error("not a partial order: {0}")]
    InvalidOrder(String),

    #[error("resource limit exceeded at level {level}: {keys} keys exceed the budget of {budget}")]
    ResourceLimit { level: usize, keys: usize, budget: usize },

    #[error("table `{refinement}` is incomplete at cell (p={points}, a={arcs})")]
    IncompleteTable { refinement: Refinement, points: usize, arcs: usize },

    #[error("expected a `{expected}` table, got `{found}`")]
    WrongRefinement { expected: Refinement, found: Refinement },

    #[error("cannot merge tables with different shapes: {0}")]
    ShapeMismatch(String),

    #[error("identity only holds in the stable cone a >= 2n (got a={a}, n={n})")]
    OutsideStableCone { a: usize, n: usize },

    #[error("arithmetic overflow in count type")]
    Overflow,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("incompatible cache format: {0}")]
    Incompatible(String),

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
