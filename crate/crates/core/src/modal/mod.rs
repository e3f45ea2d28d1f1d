//! Modal formulas and the step-wise free modal algebra tower.

pub mod formula;
pub mod tower;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModalError {
    #[error("syntax error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("duplicate variable {0}")]
    DuplicateVariable(String),
    #[error("level {level} would have {size} points, over the cap of {cap}")]
    CapExceeded {
        level: usize,
        size: BigUint,
        cap: usize,
    },
    #[error("formula needs level {rank} but the tower stops at depth {depth}")]
    DepthExceeded { rank: usize, depth: usize },
    #[error("variable {0} is not in the tower")]
    UnknownVariable(String),
}
