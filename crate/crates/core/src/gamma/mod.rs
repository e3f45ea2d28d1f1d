//! The tagged interval, model counting valued in it, and a probabilistic
//! propositional layer over first-order formulas.
//!
//! Values are rationals in [0,1] tagged with how they are approached:
//! exactly attained, or approximated strictly from below. Counting
//! satisfying assignments in a finite structure yields such a value; the
//! per-structure counts assemble into normalized finitely additive
//! measures on formula algebras, against which a small probabilistic logic
//! is interpreted and its inference rules checked for soundness.

pub mod pairing;
pub mod prob;
pub mod value;

use thiserror::Error;

use crate::fo::FoError;

#[derive(Debug, Error)]
pub enum GammaError {
    #[error("syntax error at byte {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("{n} does not divide {m}")]
    NotADivisor { m: i64, n: i64 },
    #[error("structure has an empty universe")]
    EmptyStructure,
    #[error("formula is not in the measure's domain algebra: {0}")]
    FormulaNotInDomain(String),
    #[error("measure is not normalized: {0}")]
    NotNormalized(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error(transparent)]
    Fo(FoError),
}

impl From<FoError> for GammaError {
    fn from(e: FoError) -> Self {
        match e {
            FoError::CapExceeded { what, cap } => GammaError::CapExceeded { what, cap },
            other => GammaError::Fo(other),
        }
    }
}
