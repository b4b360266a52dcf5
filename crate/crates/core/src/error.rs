use thiserror::Error;

/// Errors produced by the symmetric tensor library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arithmetic overflow computing {0}")]
    Overflow(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(
        "tensor is not symmetric: entry {index:?} differs from {canonical:?} by {deviation:e}"
    )]
    SymmetryViolation {
        index: Vec<usize>,
        canonical: Vec<usize>,
        deviation: f64,
    },
    #[error("dense tensor would need {requested} entries, cap is {cap}")]
    Capacity { requested: u128, cap: usize },
    #[error("order {0} is not supported here (generic rank formula requires order > 2)")]
    UnsupportedOrder(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("degenerate pencil: {0}")]
    DegeneratePencil(String),
    #[error("singular linear system")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
