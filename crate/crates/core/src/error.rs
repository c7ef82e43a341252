use thiserror::Error;

/// Errors raised by every operation in the crate.
///
/// Failed identity checks are not errors; they are returned as data in a
/// [`CheckReport`](crate::CheckReport). Errors mean an operation could not run.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("prerequisite failed: {0}")]
    PrerequisiteFailed(String),

    #[error("structure maps differ: a single-map check needs alpha = beta")]
    MapsNotEqual,

    #[error("structure maps are not involutions (alpha^2 = beta^2 = id fails)")]
    NotInvolutive,

    #[error("not a cochain: {0}")]
    NotACochain(String),

    #[error("coboundaries are not cocycles under the {variant} coboundary")]
    ComplexBroken { variant: String },

    #[error(
        "search budget of {budget} candidates exceeded after {explored} candidates ({survivors} survivors so far)"
    )]
    BudgetExceeded { budget: u64, explored: u64, survivors: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid document: {0}")]
    Validation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
