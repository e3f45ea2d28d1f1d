//! Maps between posets and lattices, homomorphism checks, adjoints.

use std::fmt;

use crate::order::lattice::FinDistLattice;
use crate::order::poset::FinPoset;
use crate::order::OrderError;

/// A monotone map between posets, stored by index. Monotonicity is checked
/// on construction.
#[derive(Clone)]
pub struct PosetMap {
    pub source: FinPoset,
    pub target: FinPoset,
    map: Vec<usize>,
}

impl PosetMap {
    pub fn new(source: FinPoset, target: FinPoset, map: Vec<usize>) -> Result<Self, OrderError> {
        if map.len() != source.len() || map.iter().any(|&v| v >= target.len()) {
            return Err(OrderError::BadShape);
        }
        if let Some((i, j)) = source.monotone_violation(&target, &map) {
            return Err(OrderError::NotMonotone(
                source.name(i).into(),
                source.name(j).into(),
            ));
        }
        Ok(PosetMap {
            source,
            target,
            map,
        })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.map
    }

    /// Composition `other . self` (apply self first).
    pub fn then(&self, other: &PosetMap) -> PosetMap {
        assert_eq!(self.target.len(), other.source.len());
        PosetMap::new(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&i| other.map[i]).collect(),
        )
        .expect("composite of monotone maps is monotone")
    }
}

/// The left adjoint of a monotone map `f`, if it exists:
/// `g(y) = min { x : y <= f(x) }`, characterized by `g(y) <= x iff y <= f(x)`.
pub fn lower_adjoint(f: &PosetMap) -> Option<PosetMap> {
    let mut g = Vec::with_capacity(f.target.len());
    for y in 0..f.target.len() {
        let candidates: Vec<usize> = (0..f.source.len())
            .filter(|&x| f.target.leq(y, f.apply(x)))
            .collect();
        let min = candidates
            .iter()
            .copied()
            .find(|&m| candidates.iter().all(|&x| f.source.leq(m, x)))?;
        g.push(min);
    }
    PosetMap::new(f.target.clone(), f.source.clone(), g).ok()
}

/// A first failed lattice-homomorphism equation, by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    Bottom,
    Top,
    Meet(String, String),
    Join(String, String),
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Bottom => write!(f, "f(0) != 0"),
            HomViolation::Top => write!(f, "f(1) != 1"),
            HomViolation::Meet(a, b) => write!(f, "f({a} /\\ {b}) != f({a}) /\\ f({b})"),
            HomViolation::Join(a, b) => write!(f, "f({a} \\/ {b}) != f({a}) \\/ f({b})"),
        }
    }
}

/// A map between bounded distributive lattices. Monotone by construction
/// (an invariant even for maps that are not homomorphisms).
#[derive(Clone)]
pub struct LatticeMap {
    pub source: FinDistLattice,
    pub target: FinDistLattice,
    map: Vec<usize>,
}

impl LatticeMap {
    pub fn new(
        source: FinDistLattice,
        target: FinDistLattice,
        map: Vec<usize>,
    ) -> Result<Self, OrderError> {
        if map.len() != source.len() || map.iter().any(|&v| v >= target.len()) {
            return Err(OrderError::BadShape);
        }
        if let Some((i, j)) = source.poset().monotone_violation(target.poset(), &map) {
            return Err(OrderError::NotMonotone(
                source.name(i).into(),
                source.name(j).into(),
            ));
        }
        Ok(LatticeMap {
            source,
            target,
            map,
        })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.map
    }

    pub fn as_poset_map(&self) -> PosetMap {
        PosetMap::new(
            self.source.poset().clone(),
            self.target.poset().clone(),
            self.map.clone(),
        )
        .expect("already monotone")
    }

    /// Checks preservation of bounds, meets and joins; returns the first
    /// violated equation if any.
    pub fn homomorphism_violation(&self) -> Option<HomViolation> {
        if self.map[self.source.bottom()] != self.target.bottom() {
            return Some(HomViolation::Bottom);
        }
        if self.map[self.source.top()] != self.target.top() {
            return Some(HomViolation::Top);
        }
        let n = self.source.len();
        for a in 0..n {
            for b in a..n {
                if self.map[self.source.meet(a, b)] != self.target.meet(self.map[a], self.map[b]) {
                    return Some(HomViolation::Meet(
                        self.source.name(a).into(),
                        self.source.name(b).into(),
                    ));
                }
                if self.map[self.source.join(a, b)] != self.target.join(self.map[a], self.map[b]) {
                    return Some(HomViolation::Join(
                        self.source.name(a).into(),
                        self.source.name(b).into(),
                    ));
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|x| x)
    }
}

/// The dual action of a lattice homomorphism on join-irreducibles:
/// `q` in the target maps to `min f^{-1}(up q)`, the least source element
/// whose image lies above `q`; for a homomorphism between finite distributive
/// lattices this minimum exists and is join-irreducible, giving a monotone
/// map `J(target) -> J(source)`.
pub fn dual_on_join_irreducibles(f: &LatticeMap) -> Result<PosetMap, OrderError> {
    if !f.is_homomorphism() {
        return Err(OrderError::NotHomomorphism);
    }
    let src_ji = f.source.join_irreducible_indices();
    let tgt_ji = f.target.join_irreducible_indices();
    let src_poset = f.source.join_irreducibles();
    let tgt_poset = f.target.join_irreducibles();
    let mut map = Vec::with_capacity(tgt_ji.len());
    for &q in &tgt_ji {
        let preimage_up: Vec<usize> = (0..f.source.len())
            .filter(|&x| f.target.leq(q, f.apply(x)))
            .collect();
        let min = preimage_up
            .iter()
            .copied()
            .find(|&m| preimage_up.iter().all(|&x| f.source.leq(m, x)))
            .ok_or(OrderError::NotHomomorphism)?;
        let pos = src_ji
            .iter()
            .position(|&p| p == min)
            .ok_or(OrderError::NotHomomorphism)?;
        map.push(pos);
    }
    PosetMap::new(tgt_poset, src_poset, map)
}

/// The poset of monotone maps `src -> tgt` under the pointwise order,
/// together with the maps themselves in element order. Element names list
/// the images in source index order.
pub fn monotone_function_space(src: &FinPoset, tgt: &FinPoset) -> (FinPoset, Vec<Vec<usize>>) {
    let maps = src.monotone_maps(tgt);
    let names: Vec<String> = maps
        .iter()
        .map(|m| {
            let images: Vec<&str> = m.iter().map(|&v| tgt.name(v)).collect();
            format!("[{}]", images.join(","))
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            if f.iter().zip(g).all(|(&a, &b)| tgt.leq(a, b)) {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinPoset::from_pairs(names, &pairs).expect("pointwise order is a partial order");
    (poset, maps)
}
