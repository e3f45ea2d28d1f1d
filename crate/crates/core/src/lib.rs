//! Finite-scale duality computations.
//!
//! The library works entirely with finite structures: posets and
//! distributive lattices with their Birkhoff duals, Boolean algebras with
//! their atom spaces, lattices presented by generators and relations,
//! the Vietoris construction and the free modal algebra tower built on it,
//! first-order model spaces with quantification as an algebra operation,
//! and measure-valued model counting in the Gamma chain.
//!
//! Everything is exact: sets are bitsets, numbers are rationals or big
//! integers, and every advertised law is checked by enumeration somewhere
//! in the test suite.

pub mod bitset;
pub mod caps;
pub mod fo;
pub mod functors;
pub mod gamma;
pub mod layers;
pub mod modal;
pub mod order;
pub mod presented;
