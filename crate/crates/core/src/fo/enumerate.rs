//! Enumeration of finite structures over a signature, optionally filtered
//! by a theory and reduced up to isomorphism.

use std::collections::BTreeSet;
use std::collections::HashSet;

use crate::caps::Caps;
use crate::fo::formula::{evaluate_sentence, FoFormula};
use crate::fo::signature::Signature;
use crate::fo::structure::FinStructure;
use crate::fo::FoError;

/// All structures with the given universe size, in a fixed order.
pub fn structures_of_size(
    sig: &Signature,
    size: usize,
    caps: &Caps,
) -> Result<Vec<FinStructure>, FoError> {
    let mut count: u64 = 1;
    let mut tuple_spaces: Vec<Vec<Vec<usize>>> = Vec::new();
    for (name, arity) in sig.relations() {
        let tuples = all_tuples(size, *arity);
        if tuples.len() >= 60 {
            return Err(FoError::CapExceeded {
                what: format!("tuple space of {name}"),
                cap: 60,
            });
        }
        count = count.saturating_mul(1u64 << tuples.len());
        tuple_spaces.push(tuples);
    }
    for _ in sig.constants() {
        count = count.saturating_mul(size as u64);
    }
    if count > caps.max_nodes {
        return Err(FoError::CapExceeded {
            what: format!("structure count at size {size}"),
            cap: caps.max_nodes,
        });
    }

    let mut out = Vec::new();
    let mut relations: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); tuple_spaces.len()];
    let mut constants: Vec<usize> = vec![0; sig.constants().len()];
    fill_constants(
        sig,
        size,
        &tuple_spaces,
        &mut relations,
        &mut constants,
        0,
        &mut out,
    );
    Ok(out)
}

fn all_tuples(size: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size).map(move |e| {
                    let mut t2 = t.clone();
                    t2.push(e);
                    t2
                })
            })
            .collect();
    }
    out
}

fn fill_constants(
    sig: &Signature,
    size: usize,
    tuple_spaces: &[Vec<Vec<usize>>],
    relations: &mut Vec<BTreeSet<Vec<usize>>>,
    constants: &mut Vec<usize>,
    at: usize,
    out: &mut Vec<FinStructure>,
) {
    if at == constants.len() {
        fill_relations(sig, size, tuple_spaces, relations, constants, 0, out);
        return;
    }
    for e in 0..size {
        constants[at] = e;
        fill_constants(sig, size, tuple_spaces, relations, constants, at + 1, out);
    }
}

fn fill_relations(
    sig: &Signature,
    size: usize,
    tuple_spaces: &[Vec<Vec<usize>>],
    relations: &mut Vec<BTreeSet<Vec<usize>>>,
    constants: &Vec<usize>,
    at: usize,
    out: &mut Vec<FinStructure>,
) {
    if at == tuple_spaces.len() {
        out.push(
            FinStructure::new(sig, size, relations.clone(), constants.clone())
                .expect("enumerated structures are valid"),
        );
        return;
    }
    for mask in 0..1u64 << tuple_spaces[at].len() {
        relations[at] = tuple_spaces[at]
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 != 0)
            .map(|(_, t)| t.clone())
            .collect();
        fill_relations(sig, size, tuple_spaces, relations, constants, at + 1, out);
    }
    relations[at] = BTreeSet::new();
}

/// All structures with universe sizes 1..=max_size satisfying every theory
/// sentence. With `up_to_iso` one representative per isomorphism class is
/// kept, the first in enumeration order.
pub fn enumerate_structures(
    sig: &Signature,
    max_size: usize,
    theory: &[FoFormula],
    up_to_iso: bool,
    caps: &Caps,
) -> Result<Vec<FinStructure>, FoError> {
    let mut out = Vec::new();
    let mut seen: HashSet<FinStructure> = HashSet::new();
    for size in 1..=max_size {
        for a in structures_of_size(sig, size, caps)? {
            let mut ok = true;
            for phi in theory {
                if !evaluate_sentence(&a, phi)? {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            if up_to_iso && !seen.insert(a.canonical_form()) {
                continue;
            }
            out.push(a);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo::formula::parse_fo;

    fn unary_sig() -> Signature {
        Signature::new(vec![("P".into(), 1)], vec![]).unwrap()
    }

    #[test]
    fn raw_counts_for_one_unary_relation() {
        let sig = unary_sig();
        let caps = Caps::default();
        assert_eq!(structures_of_size(&sig, 1, &caps).unwrap().len(), 2);
        assert_eq!(structures_of_size(&sig, 2, &caps).unwrap().len(), 4);
        assert_eq!(structures_of_size(&sig, 3, &caps).unwrap().len(), 8);
    }

    #[test]
    fn iso_counts_for_one_unary_relation() {
        // Up to isomorphism a unary relation is determined by its size:
        // n+1 classes at universe size n.
        let sig = unary_sig();
        let caps = Caps::default();
        for n in 1..=3usize {
            let all = enumerate_structures(&sig, n, &[], true, &caps).unwrap();
            let expected: usize = (1..=n).map(|k| k + 1).sum();
            assert_eq!(all.len(), expected);
        }
    }

    #[test]
    fn orbit_count_matches_burnside() {
        // Number of orbits of subsets of an n-set under all permutations,
        // computed with Burnside's lemma, matches the iso-reduced count.
        let sig = unary_sig();
        let caps = Caps::default();
        for n in 1..=3usize {
            let reduced = enumerate_structures(&sig, n, &[], true, &caps)
                .unwrap()
                .into_iter()
                .filter(|a| a.universe() == n)
                .count();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut total = 0usize;
            let mut perms = 0usize;
            visit_permutations(&mut perm, 0, &mut |p| {
                perms += 1;
                total += (0..1u64 << n)
                    .filter(|mask| (0..n).all(|e| mask >> e & 1 == mask >> p[e] & 1))
                    .count();
            });
            assert_eq!(reduced, total / perms);
        }
    }

    fn visit_permutations(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == perm.len() {
            visit(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            visit_permutations(perm, k + 1, visit);
            perm.swap(k, i);
        }
    }

    #[test]
    fn theory_filter() {
        let sig = unary_sig();
        let caps = Caps::default();
        let all_p = parse_fo("forall v1. P(v1)", &sig).unwrap();
        let models = enumerate_structures(&sig, 2, &[all_p], true, &caps).unwrap();
        assert_eq!(models.len(), 2);
        assert!(models
            .iter()
            .all(|a| a.relation(0).len() == a.universe()));
    }

    #[test]
    fn constants_multiply_the_count() {
        let sig = Signature::new(vec![], vec!["c".into()]).unwrap();
        let caps = Caps::default();
        assert_eq!(structures_of_size(&sig, 3, &caps).unwrap().len(), 3);
    }

    #[test]
    fn cap_respected() {
        let sig = Signature::new(vec![("R".into(), 6)], vec![]).unwrap();
        assert!(matches!(
            structures_of_size(&sig, 2, &Caps::default()),
            Err(FoError::CapExceeded { .. })
        ));
    }
}
