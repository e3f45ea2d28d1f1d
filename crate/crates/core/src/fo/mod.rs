//! First-order signatures, finite structures, formula evaluation, and
//! bounded model spaces.

pub mod algebra;
pub mod enumerate;
pub mod formula;
pub mod signature;
pub mod space;
pub mod structure;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FoError {
    #[error("syntax error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("{symbol} takes {expected} arguments, got {got}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("duplicate symbol {0}")]
    DuplicateSymbol(String),
    #[error("relation {0} must have arity at least 1")]
    BadArity(String),
    #[error("unbound variable v{0}")]
    UnboundVariable(usize),
    #[error("semiring quantifiers have no plain truth value")]
    SemiringQuantifier,
    #[error("bad structure: {0}")]
    BadStructure(String),
    #[error("{what} would exceed the cap of {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("json: {0}")]
    Json(String),
}
