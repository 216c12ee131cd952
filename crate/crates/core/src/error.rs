use thiserror::Error;

use crate::hecke::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes under the substitution ({0})")]
    Pole(String),

    #[error("invalid indeterminate name `{0}`")]
    InvalidIndeterminate(String),

    #[error("undeclared indeterminate `{0}`")]
    UndeclaredIndeterminate(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("antisymmetrizer contract violated: {0}")]
    Antisymmetrizer(String),

    #[error("Hecke validation failed: {0}")]
    Validation(Box<ValidationReport>),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("relation {0} has a vanishing leading coefficient")]
    DegenerateRelation(usize),

    #[error("degree bound {bound} is below the required degree {required}")]
    DegreeBound { bound: usize, required: usize },

    #[error("repeated roots: mu_{0} = mu_{1}")]
    RepeatedRoots(usize, usize),

    #[error("inconsistent engine state: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
