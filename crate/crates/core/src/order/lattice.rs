//! Finite bounded distributive lattices.

use crate::bitset::BitSet;
use crate::order::iso;
use crate::order::poset::{set_name, FinPoset};
use crate::order::OrderError;

/// A finite bounded distributive lattice over an explicit poset.
///
/// Meet and join are tabulated at construction; `from_poset` fails if some
/// pair lacks a meet or join, bounds are missing, or distributivity fails.
#[derive(Clone)]
pub struct FinDistLattice {
    poset: FinPoset,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl FinDistLattice {
    pub fn from_poset(poset: FinPoset) -> Result<Self, OrderError> {
        let n = poset.len();
        if n == 0 {
            return Err(OrderError::Empty);
        }
        let bottom = poset.bottom().ok_or(OrderError::NoBottom)?;
        let top = poset.top().ok_or(OrderError::NoTop)?;
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let lower = poset.down_set(i).intersection(poset.down_set(j));
                meet[i * n + j] = greatest_of(&poset, &lower).ok_or_else(|| {
                    OrderError::NoMeet(poset.name(i).into(), poset.name(j).into())
                })? as u32;
                let upper = poset.up_set(i).intersection(poset.up_set(j));
                join[i * n + j] = least_of(&poset, &upper).ok_or_else(|| {
                    OrderError::NoJoin(poset.name(i).into(), poset.name(j).into())
                })? as u32;
            }
        }
        let l = FinDistLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = l.meet(a, l.join(b, c));
                    let rhs = l.join(l.meet(a, b), l.meet(a, c));
                    if lhs != rhs {
                        return Err(OrderError::NotDistributive(
                            l.poset.name(a).into(),
                            l.poset.name(b).into(),
                            l.poset.name(c).into(),
                        ));
                    }
                }
            }
        }
        Ok(l)
    }

    /// Builds directly from tabulated data. The caller must guarantee the
    /// lattice laws; used by the powerset constructor where they hold by
    /// construction and the validating path would dominate the runtime.
    pub(crate) fn from_parts(
        poset: FinPoset,
        meet: Vec<u32>,
        join: Vec<u32>,
        bottom: usize,
        top: usize,
    ) -> Self {
        debug_assert_eq!(meet.len(), poset.len() * poset.len());
        debug_assert_eq!(join.len(), poset.len() * poset.len());
        FinDistLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        }
    }

    /// The two-element lattice `0 < 1`.
    pub fn two() -> Self {
        Self::from_poset(FinPoset::chain(vec!["0".into(), "1".into()])).unwrap()
    }

    /// A chain of the given length (`n >= 1`), named `0, c1, .., 1`.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| {
                if i == 0 {
                    "0".to_string()
                } else if i == n - 1 {
                    "1".to_string()
                } else {
                    format!("c{}", i)
                }
            })
            .collect();
        Self::from_poset(FinPoset::chain(names)).unwrap()
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.poset.leq(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j] as usize
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |a, b| self.meet(a, b))
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    /// Indices of join-irreducible elements (exactly one lower cover).
    pub fn join_irreducible_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.poset.lower_covers(i).len() == 1)
            .collect()
    }

    /// The join-irreducibles with the induced order.
    pub fn join_irreducibles(&self) -> FinPoset {
        self.poset.induced(&self.join_irreducible_indices())
    }

    /// Join-irreducibles below `a`, as a set of indices into
    /// `join_irreducible_indices()`.
    pub fn ji_below(&self, a: usize, ji: &[usize]) -> BitSet {
        BitSet::from_indices(
            ji.len(),
            ji.iter()
                .enumerate()
                .filter(|&(_, &p)| self.leq(p, a))
                .map(|(k, _)| k),
        )
    }

    /// Whether `keep` (a set of element indices) is a 0,1-sublattice.
    pub fn is_sublattice(&self, keep: &BitSet) -> bool {
        keep.contains(self.bottom)
            && keep.contains(self.top)
            && keep.iter().all(|i| {
                keep.iter()
                    .all(|j| keep.contains(self.meet(i, j)) && keep.contains(self.join(i, j)))
            })
    }

    pub fn is_isomorphic(&self, other: &FinDistLattice) -> bool {
        iso::are_isomorphic(&self.poset, &other.poset)
    }
}

fn greatest_of(p: &FinPoset, s: &BitSet) -> Option<usize> {
    s.iter().find(|&m| s.is_subset(p.down_set(m)))
}

fn least_of(p: &FinPoset, s: &BitSet) -> Option<usize> {
    s.iter().find(|&m| s.is_subset(p.up_set(m)))
}

/// The lattice of downsets of `p`, ordered by inclusion. Elements are named
/// by their member sets. Returns the lattice together with the downsets in
/// element order.
pub fn downset_lattice(p: &FinPoset) -> (FinDistLattice, Vec<BitSet>) {
    let downsets = p.downsets();
    let names: Vec<String> = downsets.iter().map(|d| set_name(p, d)).collect();
    let mut pairs = Vec::new();
    for (i, d) in downsets.iter().enumerate() {
        for (j, e) in downsets.iter().enumerate() {
            if d.is_subset(e) {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinPoset::from_pairs(names, &pairs).expect("downset order is a poset");
    let lat = FinDistLattice::from_poset(poset).expect("downsets form a distributive lattice");
    (lat, downsets)
}

/// A filter of a finite lattice, i.e. a principal upset, tagged with its
/// generator and member set.
#[derive(Clone, Debug)]
pub struct Filter {
    pub generator: usize,
    pub members: BitSet,
}

/// All filters of `l`: the principal upsets, one per element.
pub fn filters(l: &FinDistLattice) -> Vec<Filter> {
    (0..l.len())
        .map(|c| Filter {
            generator: c,
            members: l.poset().up_set(c).clone(),
        })
        .collect()
}

/// The poset of filters ordered by reverse inclusion, elements named by their
/// member sets. Index i corresponds to `filters(l)[i]`.
pub fn filters_poset(l: &FinDistLattice) -> FinPoset {
    let fs = filters(l);
    let names: Vec<String> = fs.iter().map(|f| set_name(l.poset(), &f.members)).collect();
    let mut pairs = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        for (j, g) in fs.iter().enumerate() {
            if g.members.is_subset(&f.members) {
                pairs.push((i, j));
            }
        }
    }
    FinPoset::from_pairs(names, &pairs).expect("filters under reverse inclusion form a poset")
}
