//! Materializing a presented lattice as a concrete one.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::order::boolalg::FinBoolAlg;
use crate::order::lattice::FinDistLattice;
use crate::order::poset::FinPoset;
use crate::presented::presentation::{LatKind, PresentedLattice};
use crate::presented::PresentError;

/// A presented lattice realized inside the powerset of its points: the
/// closure of the generator extents and bounds under meet and join (and
/// complement for Boolean presentations).
pub struct Realized {
    pub lattice: FinDistLattice,
    /// Present exactly for Boolean presentations.
    pub boolean: Option<FinBoolAlg>,
    /// Extent of each lattice element, aligned with element indices.
    pub extents: Vec<BitSet>,
    /// The dual space of the underlying presented lattice.
    pub dual: FinPoset,
    /// Lattice element index of each generator.
    pub generator_elements: Vec<usize>,
}

pub fn realize(pl: &PresentedLattice, caps: &Caps) -> Result<Realized, PresentError> {
    let n = pl.point_count();
    let mut extents: Vec<BitSet> = Vec::new();
    let mut index: HashMap<BitSet, usize> = HashMap::new();
    let push = |extents: &mut Vec<BitSet>, index: &mut HashMap<BitSet, usize>, e: BitSet| {
        if let Some(&i) = index.get(&e) {
            return Ok(i);
        }
        if extents.len() >= caps.max_elements {
            return Err(PresentError::CapExceeded {
                what: "realized elements".into(),
                cap: caps.max_elements,
            });
        }
        index.insert(e.clone(), extents.len());
        extents.push(e);
        Ok(extents.len() - 1)
    };
    let boolean_kind = pl.presentation.kind == LatKind::Ba;
    // Every extent enters through here; for Boolean presentations its
    // complement enters right behind it, which keeps the whole set
    // complement-closed by induction.
    let push_closed =
        |extents: &mut Vec<BitSet>, index: &mut HashMap<BitSet, usize>, e: BitSet| {
            let c = boolean_kind.then(|| e.complement());
            push(extents, index, e)?;
            if let Some(c) = c {
                push(extents, index, c)?;
            }
            Ok::<(), PresentError>(())
        };
    push_closed(&mut extents, &mut index, BitSet::new(n))?;
    push_closed(&mut extents, &mut index, BitSet::full(n))?;
    for i in 0..pl.presentation.generators.len() {
        push_closed(&mut extents, &mut index, pl.generator(i).extent)?;
    }
    // Close under pairwise meet and join; new elements join the worklist.
    let mut frontier = 0;
    while frontier < extents.len() {
        let upto = extents.len();
        for i in frontier..upto {
            for j in 0..upto {
                let a = extents[i].clone();
                let b = extents[j].clone();
                push_closed(&mut extents, &mut index, a.intersection(&b))?;
                push_closed(&mut extents, &mut index, a.union(&b))?;
            }
        }
        frontier = upto;
    }
    extents.sort();
    let names: Vec<String> = (0..extents.len()).map(|i| format!("e{}", i)).collect();
    let mut pairs = Vec::new();
    for (i, a) in extents.iter().enumerate() {
        for (j, b) in extents.iter().enumerate() {
            if a.is_subset(b) {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinPoset::from_pairs(names, &pairs).expect("extent inclusion is a partial order");
    let lattice =
        FinDistLattice::from_poset(poset).expect("extent algebra is a distributive lattice");
    let lookup: HashMap<BitSet, usize> = extents
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let generator_elements = (0..pl.presentation.generators.len())
        .map(|i| lookup[&pl.generator(i).extent])
        .collect();
    let boolean = match pl.presentation.kind {
        LatKind::Ba => Some(
            FinBoolAlg::from_lattice(lattice.clone())
                .expect("complement-closed extent algebra is Boolean"),
        ),
        LatKind::Dl => None,
    };
    Ok(Realized {
        lattice,
        boolean,
        extents,
        dual: pl.dual_space(),
        generator_elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::lattice::downset_lattice;
    use crate::order::{iso, lattice};
    use crate::presented::presentation::{Presentation, Relation};
    use crate::presented::term::Term;

    fn caps() -> Caps {
        Caps::default()
    }

    fn realize_free_dl(k: usize) -> Realized {
        let gens = (0..k).map(|i| format!("g{}", i)).collect();
        let pl =
            PresentedLattice::quotient(Presentation::free_dl(gens).unwrap(), &caps()).unwrap();
        realize(&pl, &caps()).unwrap()
    }

    #[test]
    fn free_dl_sizes() {
        // Free bounded distributive lattices on 0..=3 generators have
        // 2, 3, 6, 20 elements.
        assert_eq!(realize_free_dl(0).lattice.len(), 2);
        assert_eq!(realize_free_dl(1).lattice.len(), 3);
        assert_eq!(realize_free_dl(2).lattice.len(), 6);
        assert_eq!(realize_free_dl(3).lattice.len(), 20);
    }

    #[test]
    fn free_ba_sizes() {
        for k in 0..=2usize {
            let gens = (0..k).map(|i| format!("g{}", i)).collect();
            let pl =
                PresentedLattice::quotient(Presentation::free_ba(gens).unwrap(), &caps()).unwrap();
            let r = realize(&pl, &caps()).unwrap();
            assert_eq!(r.lattice.len(), 1 << (1 << k));
            assert!(r.boolean.is_some());
        }
    }

    #[test]
    fn degenerate_quotient_realizes_to_a_point() {
        let p = Presentation::new(
            LatKind::Dl,
            vec!["g".into()],
            vec![Relation {
                left: Term::Top,
                right: Term::Bot,
            }],
        )
        .unwrap();
        let pl = PresentedLattice::quotient(p, &caps()).unwrap();
        let r = realize(&pl, &caps()).unwrap();
        assert_eq!(r.lattice.len(), 1);
    }

    #[test]
    fn quotient_with_g_bottom() {
        let p = Presentation::new(
            LatKind::Dl,
            vec!["g".into()],
            vec![Relation {
                left: Term::Gen(0),
                right: Term::Bot,
            }],
        )
        .unwrap();
        let pl = PresentedLattice::quotient(p, &caps()).unwrap();
        let r = realize(&pl, &caps()).unwrap();
        assert_eq!(r.lattice.len(), 2);
        assert_eq!(r.dual.len(), 1);
        assert_eq!(r.generator_elements[0], r.lattice.bottom());
    }

    #[test]
    fn realized_lattice_matches_downsets_of_dual() {
        // The realized lattice of a distributive presentation is the downset
        // lattice of its dual space.
        for k in 0..=3usize {
            let r = realize_free_dl(k);
            let (dl, _) = downset_lattice(&r.dual);
            assert!(r.lattice.is_isomorphic(&dl), "k = {}", k);
        }
    }

    #[test]
    fn dual_matches_join_irreducibles() {
        for k in 0..=3usize {
            let r = realize_free_dl(k);
            assert!(iso::are_isomorphic(&r.dual, &r.lattice.join_irreducibles()));
        }
    }

    #[test]
    fn element_cap_enforced() {
        let gens = (0..4).map(|i| format!("g{}", i)).collect::<Vec<_>>();
        let pl =
            PresentedLattice::quotient(Presentation::free_dl(gens).unwrap(), &caps()).unwrap();
        let small = Caps::default().with_max_elements(10);
        assert!(matches!(
            realize(&pl, &small),
            Err(PresentError::CapExceeded { .. })
        ));
    }

    #[test]
    fn leq_agrees_with_normal_form_oracle() {
        // On the free distributive lattice with 3 generators, compare the
        // extent order against evaluation over all 8 valuations done from
        // scratch on a selection of terms, including nested ones.
        let gens: Vec<String> = (0..3).map(|i| format!("g{}", i)).collect();
        let pl =
            PresentedLattice::quotient(Presentation::free_dl(gens).unwrap(), &caps()).unwrap();
        let terms = vec![
            Term::Gen(0),
            Term::And(vec![Term::Gen(0), Term::Gen(1)]),
            Term::Or(vec![
                Term::And(vec![Term::Gen(0), Term::Gen(1)]),
                Term::Gen(2),
            ]),
            Term::And(vec![
                Term::Or(vec![Term::Gen(0), Term::Gen(1)]),
                Term::Or(vec![Term::Gen(1), Term::Gen(2)]),
            ]),
            Term::Top,
            Term::Bot,
        ];
        for a in &terms {
            for b in &terms {
                let ea = pl.element(a.clone()).unwrap();
                let eb = pl.element(b.clone()).unwrap();
                // Truth-table entailment over all valuations.
                let entails = (0..8u64).all(|m| {
                    let point = BitSet::from_mask(3, m);
                    !a.eval(&point) || b.eval(&point)
                });
                assert_eq!(pl.leq(&ea, &eb).unwrap(), entails);
            }
        }
    }

    #[test]
    fn diamond_lattice_presented() {
        // Diamond: two incomparable generators a, b with a /\ b = 0
        // and a \/ b = 1.
        let p = Presentation::new(
            LatKind::Dl,
            vec!["a".into(), "b".into()],
            vec![
                Relation {
                    left: Term::And(vec![Term::Gen(0), Term::Gen(1)]),
                    right: Term::Bot,
                },
                Relation {
                    left: Term::Or(vec![Term::Gen(0), Term::Gen(1)]),
                    right: Term::Top,
                },
            ],
        )
        .unwrap();
        let pl = PresentedLattice::quotient(p, &caps()).unwrap();
        let r = realize(&pl, &caps()).unwrap();
        assert_eq!(r.lattice.len(), 4);
        let d = lattice::FinDistLattice::from_poset(
            FinPoset::from_pairs(
                vec!["0".into(), "a".into(), "b".into(), "1".into()],
                &[(0, 1), (0, 2), (1, 3), (2, 3)],
            )
            .unwrap(),
        )
        .unwrap();
        assert!(r.lattice.is_isomorphic(&d));
    }
}
