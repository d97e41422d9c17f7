use thiserror::Error;

use crate::code::Violation;

pub type Result<T, E = CpcError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CpcError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid code: {}", join(.0))]
    InvalidCode(Vec<Violation>),

    #[error("generators do not commute: Z row {z_row} and X row {x_row}")]
    NonCommuting { z_row: usize, x_row: usize },

    #[error("no disjoint pivot columns for the Z and X generators")]
    PivotConflict,

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("code does not correct all single-qubit errors: {0}")]
    NotCorrectable(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("fit failed: {0}")]
    Fit(String),
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
