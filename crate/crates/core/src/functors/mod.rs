//! Dual-space constructions: Stone and Birkhoff duals, hyperspaces, the
//! modal-algebra functor, presented box and arrow lattices, and
//! embedding-retraction pairs.

pub mod arrow;
pub mod erp;
pub mod fbox;
pub mod ma;
pub mod spaces;

use thiserror::Error;

use crate::order::OrderError;
use crate::presented::PresentError;

#[derive(Debug, Error)]
pub enum FunctorError {
    #[error("hyperspace construction requires a discrete space")]
    NotDiscrete,
    #[error("{what} too large: {size} exceeds the limit of {max}")]
    TooLarge {
        what: String,
        size: usize,
        max: usize,
    },
    #[error("map is not a homomorphism")]
    NotAHomomorphism,
    #[error("mismatched shapes")]
    BadShape,
    #[error("diamond law violated: {0}")]
    DiamondLaw(String),
    #[error("subset is not a bounded sublattice")]
    NotASublattice,
    #[error(transparent)]
    Present(#[from] PresentError),
    #[error(transparent)]
    Order(#[from] OrderError),
}
