//! Exact-arithmetic machinery for rank-1 and rank-2 Breuil modules with
//! descent data over `E[u]/u^{ep}`, tame characters, Fontaine-Laffaille
//! rank-1 reduction, and the commuting-diagram verification engine.
//!
//! Everything is computed over small primes with exact (table-driven)
//! finite-field arithmetic; no floating point anywhere.

pub mod brmod;
pub mod chain_ring;
pub mod characters;
pub mod diagram;
pub mod field;
pub mod fl;
pub mod params;
pub mod rank1;
pub mod report;

pub use field::{Field, FF};
pub use params::{Frame, JSet};
pub use report::{CheckItem, Report};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("element does not lie in the subfield k")]
    NotInSubfield,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("object is not of rank-1 shape: {0}")]
    NotRankOneShape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
