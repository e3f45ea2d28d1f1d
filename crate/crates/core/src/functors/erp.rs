//! Embedding-retraction pairs and their duals.
//!
//! A pair (f, g) with f: C -> D and g: D -> C is an e-r-p when f is the
//! lower adjoint of g (f(c) <= d iff c <= g(d)) and f is injective; it
//! follows that g . f = id. The orientation matters: the 5-element lattice
//! 0 < a < {b, c} < 1 has a homomorphism collapsing everything above 0 onto
//! the top, a retraction of {0, 1} adjoint to the inclusion on the wrong
//! side only. For a finite sublattice K of L the inclusion admits an e-r-p
//! retraction exactly when every down-set of the form (down b) meet K has a
//! maximum and every join-irreducible of K stays join-irreducible in L; the
//! retraction is then b -> max((down b) meet K).

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::functors::FunctorError;
use crate::order::lattice::{downset_lattice, FinDistLattice};
use crate::order::map::{dual_on_join_irreducibles, LatticeMap, PosetMap};

/// Outcome of testing a pair of monotone maps against the e-r-p conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErpCheck {
    pub injective: bool,
    /// f is the lower adjoint: f(c) <= d iff c <= g(d).
    pub lower: bool,
    /// f is the upper adjoint: g(d) <= c iff d <= f(c). Not part of the
    /// e-r-p conditions; reported for diagnosis.
    pub upper: bool,
}

impl ErpCheck {
    pub fn holds(&self) -> bool {
        self.injective && self.lower
    }
}

fn injective(map: &[usize], target_len: usize) -> bool {
    let mut seen = vec![false; target_len];
    map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

/// Tests f: C -> D, g: D -> C for adjointness and injectivity of f.
pub fn check_poset_erp(f: &PosetMap, g: &PosetMap) -> Result<ErpCheck, FunctorError> {
    if f.source.len() != g.target.len() || f.target.len() != g.source.len() {
        return Err(FunctorError::BadShape);
    }
    let c = f.source.len();
    let d = f.target.len();
    let mut lower = true;
    let mut upper = true;
    for x in 0..c {
        for y in 0..d {
            if f.target.leq(f.apply(x), y) != f.source.leq(x, g.apply(y)) {
                lower = false;
            }
            if f.source.leq(g.apply(y), x) != f.target.leq(y, f.apply(x)) {
                upper = false;
            }
        }
    }
    Ok(ErpCheck {
        injective: injective(f.mapping(), d),
        lower,
        upper,
    })
}

pub fn check_lattice_erp(f: &LatticeMap, g: &LatticeMap) -> Result<ErpCheck, FunctorError> {
    check_poset_erp(&f.as_poset_map(), &g.as_poset_map())
}

/// Report of the two retraction conditions for a sublattice K of L.
pub struct ErpReport {
    /// K as a lattice in its own right, elements in ascending L index order.
    pub sub: FinDistLattice,
    /// L indices of K's elements, in `sub` element order.
    pub sub_elements: Vec<usize>,
    pub inclusion: LatticeMap,
    /// First b in L for which (down b) meet K has no maximum.
    pub non_principal_witness: Option<String>,
    /// First join-irreducible of K that is not join-irreducible in L.
    pub ji_witness: Option<String>,
    /// The retraction h: L -> K, present iff both conditions hold.
    pub retraction: Option<LatticeMap>,
}

impl ErpReport {
    pub fn principal_condition(&self) -> bool {
        self.non_principal_witness.is_none()
    }

    pub fn ji_condition(&self) -> bool {
        self.ji_witness.is_none()
    }
}

pub fn erp_retraction(l: &FinDistLattice, k_elems: &BitSet) -> Result<ErpReport, FunctorError> {
    if k_elems.len() != l.len() || !l.is_sublattice(k_elems) {
        return Err(FunctorError::NotASublattice);
    }
    let sub_elements = k_elems.to_vec();
    let sub_poset = l.poset().induced(&sub_elements);
    let sub = FinDistLattice::from_poset(sub_poset)?;
    let pos_of: HashMap<usize, usize> = sub_elements
        .iter()
        .enumerate()
        .map(|(j, &i)| (i, j))
        .collect();
    let inclusion = LatticeMap::new(sub.clone(), l.clone(), sub_elements.clone())?;

    // (i) every (down b) meet K has a maximum.
    let mut h = Vec::with_capacity(l.len());
    let mut non_principal_witness = None;
    for b in 0..l.len() {
        let below: Vec<usize> = sub_elements
            .iter()
            .copied()
            .filter(|&k| l.leq(k, b))
            .collect();
        match below
            .iter()
            .copied()
            .find(|&m| below.iter().all(|&k| l.leq(k, m)))
        {
            Some(m) => h.push(pos_of[&m]),
            None => {
                if non_principal_witness.is_none() {
                    non_principal_witness = Some(l.name(b).into());
                }
                h.push(0);
            }
        }
    }

    // (ii) join-irreducibles of K are join-irreducible in L.
    let l_ji = l.join_irreducible_indices();
    let ji_witness = sub
        .join_irreducible_indices()
        .into_iter()
        .map(|j| sub_elements[j])
        .find(|k| !l_ji.contains(k))
        .map(|k| l.name(k).into());

    let retraction = (non_principal_witness.is_none() && ji_witness.is_none())
        .then(|| LatticeMap::new(l.clone(), sub.clone(), h))
        .transpose()?;
    Ok(ErpReport {
        sub,
        sub_elements,
        inclusion,
        non_principal_witness,
        ji_witness,
        retraction,
    })
}

/// The dual of a monotone map under Birkhoff duality: preimage on
/// down-set lattices, which is always a lattice homomorphism.
pub fn downset_preimage(f: &PosetMap) -> LatticeMap {
    let (down_src, src_sets) = downset_lattice(&f.source);
    let (down_tgt, tgt_sets) = downset_lattice(&f.target);
    let index: HashMap<&BitSet, usize> = src_sets.iter().zip(0..).collect();
    let map = tgt_sets
        .iter()
        .map(|d| {
            let pre = BitSet::from_indices(
                f.source.len(),
                (0..f.source.len()).filter(|&x| d.contains(f.apply(x))),
            );
            index[&pre]
        })
        .collect();
    LatticeMap::new(down_tgt, down_src, map).expect("preimage of a down-set is a down-set")
}

fn opposite_map(f: &PosetMap) -> PosetMap {
    PosetMap::new(
        f.source.opposite(),
        f.target.opposite(),
        f.mapping().to_vec(),
    )
    .expect("a monotone map is monotone between the opposites")
}

/// Dualizes a lattice e-r-p (i, h) to the pair (h*, i*) of maps between the
/// dual spaces, and checks the e-r-p conditions there. The dual spaces carry
/// the specialization order, the opposite of the join-irreducible order;
/// dualization swaps the two adjoints, so the orientation only survives in
/// that order.
pub fn dual_poset_erp(
    i: &LatticeMap,
    h: &LatticeMap,
) -> Result<(PosetMap, PosetMap, ErpCheck), FunctorError> {
    let i_star = opposite_map(&dual_on_join_irreducibles(i)?);
    let h_star = opposite_map(&dual_on_join_irreducibles(h)?);
    let check = check_poset_erp(&h_star, &i_star)?;
    Ok((h_star, i_star, check))
}

/// Dualizes a space e-r-p (e, r), posets in specialization order, to the
/// pair (r^{-1}, e^{-1}) of homomorphisms between the open-set lattices
/// (up-sets of the specialization order), and checks the e-r-p conditions
/// there.
pub fn dual_lattice_erp(
    e: &PosetMap,
    r: &PosetMap,
) -> Result<(LatticeMap, LatticeMap, ErpCheck), FunctorError> {
    let e_inv = downset_preimage(&opposite_map(e));
    let r_inv = downset_preimage(&opposite_map(r));
    let check = check_lattice_erp(&r_inv, &e_inv)?;
    Ok((r_inv, e_inv, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::poset::FinPoset;

    fn diamond() -> FinDistLattice {
        FinDistLattice::from_poset(
            FinPoset::from_pairs(
                vec!["0".into(), "a".into(), "b".into(), "1".into()],
                &[(0, 1), (0, 2), (1, 3), (2, 3)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    /// 0 < a < {b, c} < 1: the diamond sitting on a stem.
    fn stemmed_diamond() -> FinDistLattice {
        FinDistLattice::from_poset(
            FinPoset::from_pairs(
                vec!["0".into(), "a".into(), "b".into(), "c".into(), "1".into()],
                &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn three_chain_bounds_retract() {
        let c3 = FinDistLattice::chain(3);
        let k = BitSet::from_indices(3, [0, 2]);
        let report = erp_retraction(&c3, &k).unwrap();
        assert!(report.principal_condition());
        assert!(report.ji_condition());
        let h = report.retraction.unwrap();
        // h collapses the middle element down.
        assert_eq!(h.mapping(), &[0, 0, 1]);
        let check = check_lattice_erp(&report.inclusion, &h).unwrap();
        assert!(check.holds());
        assert!(check.lower);
    }

    #[test]
    fn diamond_bounds_fail_on_join_irreducibles() {
        let d = diamond();
        let k = BitSet::from_indices(4, [0, 3]);
        let report = erp_retraction(&d, &k).unwrap();
        assert!(report.principal_condition());
        assert_eq!(report.ji_witness.as_deref(), Some("1"));
        assert!(report.retraction.is_none());
    }

    #[test]
    fn identity_retraction() {
        let d = diamond();
        let k = BitSet::full(4);
        let report = erp_retraction(&d, &k).unwrap();
        let h = report.retraction.unwrap();
        assert_eq!(h.mapping(), &[0, 1, 2, 3]);
    }

    #[test]
    fn not_a_sublattice() {
        let d = diamond();
        // {0, a, b, missing top}: not closed under join.
        let k = BitSet::from_indices(4, [0, 1, 2]);
        assert!(matches!(
            erp_retraction(&d, &k),
            Err(FunctorError::NotASublattice)
        ));
    }

    #[test]
    fn non_principal_witness_reported() {
        // In the 2x2 product with an extra top chain, take K = {0, a, b, 1}
        // where a, b are incomparable atoms: down(a v b) meet K = {0, a, b}
        // has no maximum. Use the diamond with K missing nothing vs. the
        // cube. Simplest concrete case: L = diamond with doubled top.
        let p = FinPoset::from_pairs(
            vec!["0".into(), "a".into(), "b".into(), "m".into(), "1".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
        )
        .unwrap();
        let l = FinDistLattice::from_poset(p).unwrap();
        let k = BitSet::from_indices(5, [0, 1, 2, 4]);
        // K is not meet/join closed here (a v b = m not in K), so expect
        // NotASublattice rather than a witness.
        assert!(matches!(
            erp_retraction(&l, &k),
            Err(FunctorError::NotASublattice)
        ));
    }

    #[test]
    fn retraction_agrees_with_exhaustive_search() {
        // Over every sublattice K of each small lattice, the constructive
        // branch fires exactly when some homomorphism h with (i, h) an
        // e-r-p exists at all.
        let mut lattices = vec![
            FinDistLattice::two(),
            FinDistLattice::chain(3),
            FinDistLattice::chain(4),
            diamond(),
            stemmed_diamond(),
        ];
        let pentagon_free = FinPoset::from_pairs(
            vec!["0".into(), "a".into(), "b".into(), "ab".into(), "1".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
        )
        .unwrap();
        lattices.push(FinDistLattice::from_poset(pentagon_free).unwrap());
        for l in &lattices {
            let n = l.len();
            for mask in crate::bitset::subset_masks(n) {
                let k = BitSet::from_mask(n, mask);
                if !l.is_sublattice(&k) {
                    continue;
                }
                let report = erp_retraction(l, &k).unwrap();
                if let Some(h) = &report.retraction {
                    assert!(h.is_homomorphism());
                    assert!(check_lattice_erp(&report.inclusion, h).unwrap().holds());
                }
                let found = exhaustive_retraction(l, &report);
                assert_eq!(
                    report.retraction.is_some(),
                    found,
                    "lattice {:?} sublattice {:?}",
                    (0..n).map(|i| l.name(i)).collect::<Vec<_>>(),
                    k.to_vec()
                );
            }
        }
    }

    fn exhaustive_retraction(l: &FinDistLattice, report: &ErpReport) -> bool {
        let kn = report.sub.len();
        let ln = l.len();
        let mut map = vec![0usize; ln];
        loop {
            if let Ok(h) = LatticeMap::new(l.clone(), report.sub.clone(), map.clone()) {
                if h.is_homomorphism() {
                    if let Ok(check) = check_lattice_erp(&report.inclusion, &h) {
                        if check.holds() {
                            return true;
                        }
                    }
                }
            }
            let mut pos = 0;
            loop {
                if pos == ln {
                    return false;
                }
                map[pos] += 1;
                if map[pos] < kn {
                    break;
                }
                map[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn wrong_sided_retraction_is_not_an_erp() {
        // Collapsing everything above 0 onto the top retracts {0, 1} out of
        // the stemmed diamond, but as the upper component of the adjunction:
        // the pair fails the e-r-p conditions, in line with the top of the
        // sublattice not being join-irreducible in the big lattice.
        let l = stemmed_diamond();
        let k = BitSet::from_indices(5, [0, 4]);
        let report = erp_retraction(&l, &k).unwrap();
        assert!(report.principal_condition());
        assert_eq!(report.ji_witness.as_deref(), Some("1"));
        assert!(report.retraction.is_none());

        let h = LatticeMap::new(l.clone(), report.sub.clone(), vec![0, 1, 1, 1, 1]).unwrap();
        assert!(h.is_homomorphism());
        let check = check_lattice_erp(&report.inclusion, &h).unwrap();
        assert!(check.upper && !check.lower);
        assert!(!check.holds());
    }

    #[test]
    fn dual_of_lattice_erp_is_poset_erp() {
        let c3 = FinDistLattice::chain(3);
        let report = erp_retraction(&c3, &BitSet::from_indices(3, [0, 2])).unwrap();
        let h = report.retraction.clone().unwrap();
        let (_, _, check) = dual_poset_erp(&report.inclusion, &h).unwrap();
        assert!(check.holds());
    }

    #[test]
    fn dual_erp_round_trip_small_lattices() {
        let mut lattices = vec![
            FinDistLattice::chain(3),
            FinDistLattice::chain(4),
            diamond(),
            stemmed_diamond(),
        ];
        let p = FinPoset::from_pairs(
            vec!["0".into(), "a".into(), "b".into(), "ab".into(), "1".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
        )
        .unwrap();
        lattices.push(FinDistLattice::from_poset(p).unwrap());
        for l in &lattices {
            for mask in crate::bitset::subset_masks(l.len()) {
                let k = BitSet::from_mask(l.len(), mask);
                if !l.is_sublattice(&k) {
                    continue;
                }
                let report = erp_retraction(l, &k).unwrap();
                let Some(h) = report.retraction.clone() else {
                    continue;
                };
                let (h_star, i_star, check) = dual_poset_erp(&report.inclusion, &h).unwrap();
                assert!(check.holds(), "dual of an e-r-p must be an e-r-p");
                // And back: dualizing the poset pair gives a lattice e-r-p
                // between the down-set lattices.
                let (_, _, back) = dual_lattice_erp(&h_star, &i_star).unwrap();
                assert!(back.holds());
            }
        }
    }
}
