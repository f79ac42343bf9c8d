use thiserror::Error;

use crate::symbolic::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lambda must be at least 2, got {0}")]
    InvalidLambda(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("Fock dimension {dim} too small for lambda = {lambda} (need at least {min})")]
    DimTooSmall {
        dim: usize,
        lambda: usize,
        min: usize,
    },

    #[error("window [{n_min}, {n_max}] too small: {reason}")]
    WindowTooSmall {
        n_min: i64,
        n_max: i64,
        reason: String,
    },

    #[error("operator word does not fit the basis window: {0}")]
    InsufficientWindow(String),

    #[error("no interior basis state left to compare on")]
    EmptyInterior,

    #[error("degenerate deformation parameter: wedge ≡ 0 mod λ (wedge = {wedge}, λ = {lambda})")]
    DegenerateDeformation { wedge: i64, lambda: usize },

    #[error("unsupported on this backend: {0}")]
    UnsupportedBackend(String),

    #[error("cannot normal-order expression: {0}")]
    Symbolic(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
