//! The free diamond extension of a Boolean algebra.
//!
//! MA(B) is the Boolean algebra freely generated by tokens ◇a for a in B,
//! modulo ◇0 = 0 and ◇(a∨b) = ◇a ∨ ◇b. Concretely it is the powerset
//! algebra of the hyperspace of the dual of B, with
//! ◇a = { C ⊆ atoms(B) : C ∩ â ≠ ∅ }.
//!
//! The algebra itself is kept implicit (elements are subsets of hyperspace
//! points); only small instances are materialized, by the oracle tests.

use num_bigint::BigUint;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::functors::spaces::{dual_ba, vietoris, vietoris_map, Vietoris};
use crate::functors::FunctorError;
use crate::order::boolalg::FinBoolAlg;
use crate::order::map::LatticeMap;

pub struct MaAlgebra {
    /// Number of atoms of the base algebra.
    pub base_atoms: usize,
    /// Hyperspace of the dual: one point per subset of atoms.
    pub hyper: Vietoris,
    /// `diamond[e]` = the MA element ◇e, as a set of hyperspace points,
    /// indexed by elements of the base algebra.
    pub diamond: Vec<BitSet>,
}

impl MaAlgebra {
    /// Number of elements of MA(B) = 2^(2^atoms).
    pub fn element_count(&self) -> BigUint {
        BigUint::from(1u32) << (1usize << self.base_atoms)
    }

    pub fn point_count(&self) -> usize {
        self.hyper.subsets.len()
    }

    /// Materializes the full powerset algebra; only feasible for small
    /// bases (asserts at most 3 atoms, i.e. 256 elements).
    pub fn materialize(&self) -> (FinBoolAlg, Vec<usize>) {
        assert!(self.base_atoms <= 3, "materialize only for small bases");
        let b = FinBoolAlg::powerset(self.hyper.space.names());
        let diamond = self
            .diamond
            .iter()
            .map(|d| {
                let name = crate::order::poset::set_name(&self.hyper.space, d);
                b.poset().index_of(&name).expect("subset element exists")
            })
            .collect();
        (b, diamond)
    }
}

pub fn ma_functor(b: &FinBoolAlg, caps: &Caps) -> Result<MaAlgebra, FunctorError> {
    let dual = dual_ba(b);
    let hyper = vietoris(&dual.space, caps)?;
    let diamond = (0..b.len())
        .map(|e| {
            BitSet::from_indices(
                hyper.subsets.len(),
                hyper
                    .subsets
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.intersects(&dual.hat[e]))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    Ok(MaAlgebra {
        base_atoms: dual.space.len(),
        hyper,
        diamond,
    })
}

/// The action of MA on a homomorphism, represented dually: a point map
/// from the hyperspace of the target dual to the hyperspace of the source
/// dual. The algebra map is preimage under it.
pub struct MaMap {
    pub point_map: Vec<usize>,
}

impl MaMap {
    /// Applies MA(h) to an element of MA(B), giving an element of MA(B').
    pub fn apply(&self, m: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.point_map.len(),
            self.point_map
                .iter()
                .enumerate()
                .filter(|(_, &img)| m.contains(img))
                .map(|(i, _)| i),
        )
    }
}

/// Dual action of a Boolean homomorphism on atoms: each atom of the target
/// goes to the unique atom of the source whose image lies above it.
pub fn dual_atom_map(h: &LatticeMap, b: &FinBoolAlg, b2: &FinBoolAlg) -> Result<Vec<usize>, FunctorError> {
    if !h.is_homomorphism() {
        return Err(FunctorError::NotAHomomorphism);
    }
    b2.atoms()
        .iter()
        .map(|&a2| {
            let mut found = None;
            for (i, &a) in b.atoms().iter().enumerate() {
                if b2.leq(a2, h.apply(a)) {
                    if found.is_some() {
                        return Err(FunctorError::NotAHomomorphism);
                    }
                    found = Some(i);
                }
            }
            found.ok_or(FunctorError::NotAHomomorphism)
        })
        .collect()
}

/// MA applied to a homomorphism `h: B -> B'`.
pub fn ma_map(
    h: &LatticeMap,
    b: &FinBoolAlg,
    b2: &FinBoolAlg,
    ma_b: &MaAlgebra,
    ma_b2: &MaAlgebra,
) -> Result<MaMap, FunctorError> {
    let g = dual_atom_map(h, b, b2)?;
    let point_map = vietoris_map(&g, &ma_b2.hyper, &ma_b.hyper);
    Ok(MaMap { point_map })
}

/// A Boolean algebra with a diamond operator satisfying the two rank-1
/// equations ◇0 = 0 and ◇(a∨b) = ◇a ∨ ◇b.
pub struct DiamondAlgebra {
    pub algebra: FinBoolAlg,
    pub dia: Vec<usize>,
}

impl DiamondAlgebra {
    pub fn new(algebra: FinBoolAlg, dia: Vec<usize>) -> Result<Self, FunctorError> {
        if dia.len() != algebra.len() || dia.iter().any(|&d| d >= algebra.len()) {
            return Err(FunctorError::BadShape);
        }
        if dia[algebra.bottom()] != algebra.bottom() {
            return Err(FunctorError::DiamondLaw("dia(0) != 0".into()));
        }
        for a in 0..algebra.len() {
            for b in 0..algebra.len() {
                if dia[algebra.join(a, b)] != algebra.join(dia[a], dia[b]) {
                    return Err(FunctorError::DiamondLaw(format!(
                        "dia({} \\/ {}) != dia({}) \\/ dia({})",
                        algebra.name(a),
                        algebra.name(b),
                        algebra.name(a),
                        algebra.name(b)
                    )));
                }
            }
        }
        Ok(DiamondAlgebra { algebra, dia })
    }

    /// The diamond of a powerset algebra induced by a successor relation on
    /// its atoms: ◇U = { x : some successor of x lies in U }.
    pub fn from_relation(atom_names: &[String], edges: &[(usize, usize)]) -> Self {
        let algebra = FinBoolAlg::powerset(atom_names);
        let n = atom_names.len();
        let dia = (0..algebra.len())
            .map(|u| {
                let us = algebra.atoms_below(u).clone();
                let pre = BitSet::from_indices(
                    n,
                    (0..n).filter(|&x| edges.iter().any(|&(s, t)| s == x && us.contains(t))),
                );
                algebra.from_atom_set(&pre)
            })
            .collect();
        DiamondAlgebra::new(algebra, dia).expect("relational diamond satisfies the laws")
    }
}
