//! Finite Boolean algebras.

use crate::bitset::{subset_masks, BitSet};
use crate::order::lattice::FinDistLattice;
use crate::order::poset::FinPoset;
use crate::order::OrderError;

/// A finite Boolean algebra: a distributive lattice in which every element
/// has a complement. Atoms and the atom decomposition are precomputed.
#[derive(Clone)]
pub struct FinBoolAlg {
    lattice: FinDistLattice,
    compl: Vec<u32>,
    atoms: Vec<usize>,
    /// `atoms_below[a]` indexes into `atoms`.
    atoms_below: Vec<BitSet>,
}

impl FinBoolAlg {
    pub fn from_lattice(lattice: FinDistLattice) -> Result<Self, OrderError> {
        let n = lattice.len();
        let mut compl = vec![0u32; n];
        for a in 0..n {
            let c = (0..n).find(|&b| {
                lattice.meet(a, b) == lattice.bottom() && lattice.join(a, b) == lattice.top()
            });
            match c {
                Some(b) => compl[a] = b as u32,
                None => return Err(OrderError::NoComplement(lattice.name(a).into())),
            }
        }
        let atoms: Vec<usize> = (0..n)
            .filter(|&a| {
                a != lattice.bottom()
                    && (0..n).all(|b| {
                        !lattice.poset().lt(b, a) || b == lattice.bottom()
                    })
            })
            .collect();
        let atoms_below = (0..n)
            .map(|a| {
                BitSet::from_indices(
                    atoms.len(),
                    atoms
                        .iter()
                        .enumerate()
                        .filter(|&(_, &at)| lattice.leq(at, a))
                        .map(|(k, _)| k),
                )
            })
            .collect::<Vec<_>>();
        // Every element must be the join of the atoms below it.
        for a in 0..n {
            let j = lattice.join_all(atoms_below[a].iter().map(|k| atoms[k]));
            if j != a {
                return Err(OrderError::NotAtomistic(lattice.name(a).into()));
            }
        }
        Ok(FinBoolAlg {
            lattice,
            compl,
            atoms,
            atoms_below,
        })
    }

    /// The powerset algebra on the given atom names. Element `i` is the
    /// subset with mask `i`; names are `{..}` sets of atom names.
    ///
    /// Built directly as masks under the subset order with bitwise meet,
    /// join and complement; the laws hold by construction, and the
    /// validating constructors would dominate the runtime beyond ten or so
    /// atoms.
    pub fn powerset(atom_names: &[String]) -> Self {
        let k = atom_names.len();
        assert!(k <= 20, "powerset algebra too large");
        assert!(
            (1..k).all(|i| !atom_names[..i].contains(&atom_names[i])),
            "duplicate atom name"
        );
        let n = 1usize << k;
        let names: Vec<String> = subset_masks(k)
            .map(|m| {
                let mut parts: Vec<&str> = (0..k)
                    .filter(|&i| m >> i & 1 != 0)
                    .map(|i| atom_names[i].as_str())
                    .collect();
                parts.sort();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        let mut up = vec![BitSet::new(n); n];
        let mut down = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if i & !j == 0 {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        let poset = FinPoset::from_parts(names, up, down);
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                meet[i * n + j] = (i & j) as u32;
                join[i * n + j] = (i | j) as u32;
            }
        }
        let lattice = FinDistLattice::from_parts(poset, meet, join, 0, n - 1);
        let compl: Vec<u32> = (0..n).map(|i| (n - 1 - i) as u32).collect();
        let atoms: Vec<usize> = (0..k).map(|t| 1usize << t).collect();
        let atoms_below: Vec<BitSet> = (0..n)
            .map(|e| BitSet::from_indices(k, (0..k).filter(|&t| e >> t & 1 != 0)))
            .collect();
        FinBoolAlg {
            lattice,
            compl,
            atoms,
            atoms_below,
        }
    }

    pub fn lattice(&self) -> &FinDistLattice {
        &self.lattice
    }

    pub fn poset(&self) -> &FinPoset {
        self.lattice.poset()
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        self.lattice.name(i)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.lattice.leq(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.lattice.meet(i, j)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.lattice.join(i, j)
    }

    pub fn complement(&self, i: usize) -> usize {
        self.compl[i] as usize
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    /// Element indices of the atoms, in element order.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Atoms below element `a`, as indices into `atoms()`.
    pub fn atoms_below(&self, a: usize) -> &BitSet {
        &self.atoms_below[a]
    }

    /// The element that is the join of the given atoms (by atom index).
    pub fn from_atom_set(&self, s: &BitSet) -> usize {
        assert_eq!(s.len(), self.atoms.len());
        self.lattice.join_all(s.iter().map(|k| self.atoms[k]))
    }
}
