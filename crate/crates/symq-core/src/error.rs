//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("cell ({0},{1}) lies outside the diagram")]
    CellOutsideDiagram(u32, u32),

    #[error("weight mismatch: |mu| = {0} but |lambda| = {1}")]
    WeightMismatch(u32, u32),

    #[error("geometric series does not terminate: no truncation constraint caps the monomial")]
    NonTerminatingSeries,

    #[error("infinite Pochhammer product requires a truncation cap")]
    InfiniteWithoutCap,

    #[error("input is not symmetric under the transposition x{0} <-> x{1}")]
    NotSymmetric(usize, usize),

    #[error("insufficient variables: operation needs n >= {needed}, got {got}")]
    InsufficientVariables { needed: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exact division left a nonzero remainder")]
    InexactDivision,

    #[error("rational value does not clear to a polynomial")]
    NotPolynomial,

    #[error("truncation cap exceeds the number of variables ({cap} > {nvars})")]
    CapExceedsVariables { cap: u32, nvars: usize },

    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
