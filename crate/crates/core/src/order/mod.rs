//! Finite posets, distributive lattices and Boolean algebras, with the
//! combinatorics used by the dualities: downsets, join-irreducibles,
//! filters, isomorphism search and exhaustive enumeration.

pub mod boolalg;
pub mod enumerate;
pub mod iso;
pub mod json;
pub mod lattice;
pub mod map;
pub mod poset;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("relation data has the wrong shape")]
    BadShape,
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("unknown element name {0:?}")]
    UnknownElement(String),
    #[error("order is not reflexive at {0}")]
    NotReflexive(String),
    #[error("order has a cycle through {0} and {1}")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive at {0} <= {1} <= {2}")]
    NotTransitive(String, String, String),
    #[error("empty carrier")]
    Empty,
    #[error("no bottom element")]
    NoBottom,
    #[error("no top element")]
    NoTop,
    #[error("elements {0} and {1} have no meet")]
    NoMeet(String, String),
    #[error("elements {0} and {1} have no join")]
    NoJoin(String, String),
    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("element {0} has no complement")]
    NoComplement(String),
    #[error("element {0} is not a join of atoms")]
    NotAtomistic(String),
    #[error("map is not monotone: {0} <= {1} is not preserved")]
    NotMonotone(String, String),
    #[error("map is not a lattice homomorphism")]
    NotHomomorphism,
    #[error("invalid JSON: {0}")]
    Json(String),
}
