//! Dual spaces and hyperspaces.
//!
//! Finite spaces are plain posets: the specialization order carries all the
//! topology. Boolean duals are discrete; distributive duals are the posets
//! of join-irreducibles. "Closed subset", "compact saturated subset" and
//! "continuous map" specialize to "subset", "upset" and "monotone map".

use crate::bitset::{subset_masks, BitSet};
use crate::caps::Caps;
use crate::functors::FunctorError;
use crate::order::boolalg::FinBoolAlg;
use crate::order::lattice::FinDistLattice;
use crate::order::poset::{set_name, FinPoset};

/// Stone dual of a finite Boolean algebra: the discrete space of atoms,
/// with the clopen assignment sending an element to its atom set.
pub struct StoneDual {
    pub space: FinPoset,
    /// `hat[e]` = atoms below element e, as indices into the space.
    pub hat: Vec<BitSet>,
}

pub fn dual_ba(b: &FinBoolAlg) -> StoneDual {
    let names = b
        .atoms()
        .iter()
        .map(|&a| b.name(a).to_string())
        .collect();
    let space = FinPoset::discrete(names);
    let hat = (0..b.len()).map(|e| b.atoms_below(e).clone()).collect();
    StoneDual { space, hat }
}

/// Birkhoff dual of a finite distributive lattice: the poset of
/// join-irreducibles, with elements going to their downsets of irreducibles.
pub struct BirkhoffDual {
    pub space: FinPoset,
    /// `hat[e]` = join-irreducibles below element e, as space indices.
    pub hat: Vec<BitSet>,
    /// Lattice element index of each space point.
    pub ji: Vec<usize>,
}

pub fn dual_dl(l: &FinDistLattice) -> BirkhoffDual {
    let ji = l.join_irreducible_indices();
    let space = l.join_irreducibles();
    let hat = (0..l.len()).map(|e| l.ji_below(e, &ji)).collect();
    BirkhoffDual { space, hat, ji }
}

/// The hyperspace of a finite discrete space: all subsets, discrete again.
pub struct Vietoris {
    pub space: FinPoset,
    /// Subset of base points represented by each hyperspace point.
    pub subsets: Vec<BitSet>,
}

pub fn vietoris(x: &FinPoset, caps: &Caps) -> Result<Vietoris, FunctorError> {
    if !x.is_discrete() {
        return Err(FunctorError::NotDiscrete);
    }
    let n = x.len();
    if n >= 20 || (1usize << n) > caps.max_points {
        return Err(FunctorError::TooLarge {
            what: "hyperspace points".into(),
            size: n,
            max: caps.max_points,
        });
    }
    let subsets: Vec<BitSet> = subset_masks(n).map(|m| BitSet::from_mask(n, m)).collect();
    let names = subsets.iter().map(|s| set_name(x, s)).collect();
    Ok(Vietoris {
        space: FinPoset::discrete(names),
        subsets,
    })
}

impl Vietoris {
    pub fn index_of(&self, s: &BitSet) -> usize {
        self.subsets
            .iter()
            .position(|t| t == s)
            .expect("subset in hyperspace")
    }
}

/// Forward-image action on hyperspace points: a map `f: X -> Y` induces
/// `C ↦ f(C)` from `vietoris(X)` to `vietoris(Y)`.
pub fn vietoris_map(f: &[usize], vx: &Vietoris, vy: &Vietoris) -> Vec<usize> {
    let m = vy.subsets.first().map(|s| s.len()).unwrap_or(0);
    vx.subsets
        .iter()
        .map(|c| {
            let image = BitSet::from_indices(m, c.iter().map(|i| f[i]));
            vy.index_of(&image)
        })
        .collect()
}

/// The Smyth hyperspace of a finite poset: upsets (including the empty one)
/// ordered by reverse inclusion.
pub struct SmythSpace {
    pub space: FinPoset,
    pub upsets: Vec<BitSet>,
}

pub fn smyth(x: &FinPoset, caps: &Caps) -> Result<SmythSpace, FunctorError> {
    let opposite = x.opposite();
    let downs = opposite
        .downsets_capped(caps.max_points)
        .ok_or(FunctorError::TooLarge {
            what: "upsets".into(),
            size: x.len(),
            max: caps.max_points,
        })?;
    let upsets: Vec<BitSet> = downs;
    let names: Vec<String> = upsets.iter().map(|u| set_name(x, u)).collect();
    let mut pairs = Vec::new();
    for (i, u) in upsets.iter().enumerate() {
        for (j, v) in upsets.iter().enumerate() {
            if v.is_subset(u) {
                pairs.push((i, j));
            }
        }
    }
    let space = FinPoset::from_pairs(names, &pairs).expect("reverse inclusion is a partial order");
    Ok(SmythSpace { space, upsets })
}
