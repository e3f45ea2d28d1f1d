//! Lattices presented by generators and relations, with the point method:
//! elements are identified with their extents over two-valued points, which
//! makes order, equality and realization computable.

pub mod presentation;
pub mod realize;
pub mod term;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentError {
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("negation is not allowed in distributive presentations")]
    NegationInDistributive,
    #[error("malformed term: {0}")]
    BadTerm(String),
    #[error("elements belong to different presented lattices")]
    MixedLattice,
    #[error("cap exceeded: {what} over {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
}
