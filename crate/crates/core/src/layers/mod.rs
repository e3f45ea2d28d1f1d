//! Quantifier layers over model spaces.
//!
//! Starting from a Boolean subalgebra of a model-space powerset, these
//! builders adjoin one layer of existential quantification (or its
//! semiring-valued generalization) over a chosen variable, construct the
//! canonical map from the smaller space into the hyperspace (or measure
//! space) of the algebra's dual, and verify by brute force that the image
//! of that map presents the dual of the enlarged algebra.

pub mod eval;
pub mod layer;
pub mod measure;
pub mod semiring;

use thiserror::Error;

use crate::fo::FoError;
use crate::functors::FunctorError;

#[derive(Debug, Error)]
pub enum LayerError {
    #[error("variable v{0} is not in the space's window")]
    IndexOutOfWindow(usize),
    #[error("not a semiring: {0}")]
    BadSemiring(String),
    #[error("unknown semiring element {0:?}")]
    UnknownElement(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error(transparent)]
    Fo(FoError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

impl From<FoError> for LayerError {
    fn from(e: FoError) -> Self {
        match e {
            FoError::UnboundVariable(v) => LayerError::IndexOutOfWindow(v),
            FoError::CapExceeded { what, cap } => LayerError::CapExceeded { what, cap },
            other => LayerError::Fo(other),
        }
    }
}
