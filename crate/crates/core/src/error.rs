use thiserror::Error;

use crate::poset::Cover;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element id {id} is out of range 1..={n}")]
    ElementOutOfRange { id: usize, n: usize },

    #[error("posets are limited to {max} elements, got {n}")]
    TooManyElements { n: usize, max: usize },

    #[error("edge {lower} -> {upper} is a loop")]
    SelfLoop { lower: usize, upper: usize },

    #[error("edge {lower} -> {upper} is listed twice")]
    DuplicateEdge { lower: usize, upper: usize },

    #[error("the cover relation contains a cycle through element {element}")]
    Cycle { element: usize },

    #[error("edge {lower} -> {upper} is implied by other edges (not a Hasse diagram)")]
    RedundantEdge { lower: usize, upper: usize },

    #[error("labels must be a permutation of 1..={n}")]
    InvalidLabels { n: usize },

    #[error("edge {0:?} disagrees with the labeling")]
    LabelMismatch(Cover),

    #[error("the strict/weak assignment has a bad cycle")]
    BadCycle,

    #[error("this operation needs an explicit labeling")]
    MissingLabels,

    #[error("label {0} does not occur in the poset")]
    UnknownLabel(usize),

    #[error("{lower} < {upper} is not a relation of the poset")]
    NotARelation { lower: usize, upper: usize },

    #[error("{lower} < {upper} is a relation but not a cover relation")]
    NotACover { lower: usize, upper: usize },

    #[error("elements {x} and {y} are comparable")]
    NotIncomparable { x: usize, y: usize },

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("compositions of {left} and {right} cannot be compared")]
    DegreeMismatch { left: usize, right: usize },

    #[error("expression is in the {found} basis, expected {expected}")]
    BasisMismatch { expected: char, found: char },

    #[error("sequence contains a repeated entry at position {0}")]
    DuplicateToken(usize),

    #[error("{what}: size {n} exceeds the configured cap {cap}")]
    SizeCap { what: &'static str, n: usize, cap: usize },

    #[error("coefficient overflow while enumerating")]
    Overflow,

    #[error("posets have different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("framework has {expected} elements but {found} components were given")]
    ComponentCount { expected: usize, found: usize },

    #[error("poset does not have chain Greene shape (k,1): {0:?}")]
    WrongShape(Vec<usize>),

    #[error("invalid interval encoding: {0}")]
    InvalidEncoding(String),

    #[error("caterpillar spines differ")]
    SpineMismatch,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
