use thiserror::Error;

use crate::polygon::Diagonal;

/// Everything that can go wrong while building or checking friezes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid level {0}: the field level must be at least 3")]
    InvalidLevel(u64),

    #[error("lambda_{p} does not live in the level-{level} field ({p} does not divide {level})")]
    IncompatibleLevel { p: u64, level: u64 },

    #[error("ring elements belong to different fields (levels {left} and {right})")]
    ContextMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("expected {expected} coefficients, found {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("{0} is not a diagonal of the {1}-gon")]
    InvalidDiagonal(Diagonal, usize),

    #[error("vertex {vertex} is out of range for the {n}-gon")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid dissection: {0}")]
    InvalidDissection(String),

    #[error("polygon must have at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("not a frieze: {0}")]
    NotAFrieze(String),

    #[error("positivity violated: {0}")]
    Positivity(String),

    #[error("pattern coordinate ({i}, {j}) lies outside the strip of a {n}-gon frieze")]
    OutOfStrip { i: i64, j: i64, n: usize },

    #[error("inconsistent gluing data: {0}")]
    GlueSpec(String),

    #[error("gluing and quiddity-recurrence constructions disagree at ({0}, {1})")]
    InternalDisagreement(usize, usize),

    #[error("frieze is not the image of any dissection: entries equal to 1 on crossing diagonals {0} and {1}")]
    NotInImage(Diagonal, Diagonal),

    #[error("invalid quiddity: {0}")]
    InvalidQuiddity(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
