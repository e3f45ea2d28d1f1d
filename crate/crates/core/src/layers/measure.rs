//! Finitely additive semiring-valued measures on finite discrete spaces.
//!
//! On a finite discrete space a finitely additive measure is determined by
//! its values on singletons, so a measure is stored as one semiring element
//! per point; the value on a subset is the fold of those.

use crate::bitset::{subset_masks, BitSet};
use crate::caps::Caps;
use crate::layers::semiring::SemiringTable;
use crate::layers::LayerError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Measure {
    values: Vec<usize>,
}

impl Measure {
    pub fn from_point_values(values: Vec<usize>) -> Measure {
        Measure { values }
    }

    pub fn points(&self) -> usize {
        self.values.len()
    }

    pub fn point_value(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn point_values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, set: &BitSet, s: &SemiringTable) -> usize {
        assert_eq!(set.len(), self.values.len(), "measure width mismatch");
        s.sum(set.iter().map(|x| self.values[x]))
    }

    /// Points with nonzero value.
    pub fn support(&self, s: &SemiringTable) -> BitSet {
        BitSet::from_indices(
            self.values.len(),
            (0..self.values.len()).filter(|&x| self.values[x] != s.zero()),
        )
    }
}

/// All finitely additive S-valued measures on the powerset of an n-point
/// discrete space.
pub fn measures_space(
    n: usize,
    s: &SemiringTable,
    caps: &Caps,
) -> Result<Vec<Measure>, LayerError> {
    let count = (s.len() as u64).checked_pow(n as u32);
    match count {
        Some(c) if c <= caps.max_points as u64 => {}
        _ => {
            return Err(LayerError::CapExceeded {
                what: format!("{}^{} measures", s.len(), n),
                cap: caps.max_points as u64,
            })
        }
    }
    let mut out = Vec::new();
    let mut values = vec![0usize; n];
    loop {
        out.push(Measure::from_point_values(values.clone()));
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            values[k] += 1;
            if values[k] < s.len() {
                break;
            }
            values[k] = 0;
        }
    }
}

/// Checks μ(0) = 0 and μ(a∨b) + μ(a∧b) = μ(a) + μ(b) over all pairs of
/// subsets. Intended for small spaces; the loop is 4^n.
pub fn is_finitely_additive(m: &Measure, s: &SemiringTable) -> bool {
    let n = m.points();
    assert!(n <= 12, "additivity sweep out of range");
    let sets: Vec<BitSet> = subset_masks(n).map(|w| BitSet::from_mask(n, w)).collect();
    if m.value(&sets[0], s) != s.zero() {
        return false;
    }
    sets.iter().all(|a| {
        sets.iter().all(|b| {
            let va = m.value(a, s);
            let vb = m.value(b, s);
            let vu = m.value(&a.union(b), s);
            let vi = m.value(&a.intersection(b), s);
            s.add(vu, vi) == s.add(va, vb)
        })
    })
}

/// Integrates a point function `g` along a point map `f` into a space of
/// `target_len` points: the result assigns to each subset `a` the folded
/// sum of `g` over `f^{-1}(a)`. Equivalently, the pushforward along `f` of
/// the measure with density `g`.
pub fn integrate_pushforward(
    g: &[usize],
    f: &[usize],
    target_len: usize,
    s: &SemiringTable,
) -> Measure {
    assert_eq!(g.len(), f.len(), "density and map disagree on the domain");
    let mut values = vec![s.zero(); target_len];
    for (x, &t) in f.iter().enumerate() {
        values[t] = s.add(values[t], g[x]);
    }
    Measure::from_point_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::spaces::vietoris;
    use crate::order::poset::FinPoset;

    fn caps() -> Caps {
        Caps::default()
    }

    /// Oracle: enumerate every function from subsets to S and keep the
    /// finitely additive ones, as full value vectors indexed by subset mask.
    fn additive_functions_oracle(n: usize, s: &SemiringTable) -> Vec<Vec<usize>> {
        let subsets: Vec<BitSet> = subset_masks(n).map(|w| BitSet::from_mask(n, w)).collect();
        let slots = subsets.len();
        let mut out = Vec::new();
        let mut f = vec![0usize; slots];
        'next: loop {
            let additive = f[0] == s.zero()
                && (0..slots).all(|a| {
                    (0..slots).all(|b| {
                        let u = (a | b) as usize;
                        let i = (a & b) as usize;
                        s.add(f[u], f[i]) == s.add(f[a], f[b])
                    })
                });
            if additive {
                out.push(f.clone());
            }
            let mut k = slots;
            loop {
                if k == 0 {
                    break 'next;
                }
                k -= 1;
                f[k] += 1;
                if f[k] < s.len() {
                    continue 'next;
                }
                f[k] = 0;
            }
        }
        out
    }

    fn value_vector(m: &Measure, s: &SemiringTable) -> Vec<usize> {
        subset_masks(m.points())
            .map(|w| m.value(&BitSet::from_mask(m.points(), w), s))
            .collect()
    }

    #[test]
    fn two_points_mod_two_gives_four_measures() {
        let z2 = SemiringTable::zmod(2).unwrap();
        let ms = measures_space(2, &z2, &caps()).unwrap();
        assert_eq!(ms.len(), 4);
        let mut got: Vec<Vec<usize>> = ms.iter().map(|m| value_vector(m, &z2)).collect();
        let mut expected = additive_functions_oracle(2, &z2);
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn enumeration_matches_oracle_mod_three() {
        let z3 = SemiringTable::zmod(3).unwrap();
        let ms = measures_space(2, &z3, &caps()).unwrap();
        assert_eq!(ms.len(), 9);
        let mut got: Vec<Vec<usize>> = ms.iter().map(|m| value_vector(m, &z3)).collect();
        let mut expected = additive_functions_oracle(2, &z3);
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn empty_space_has_one_measure() {
        let z3 = SemiringTable::zmod(3).unwrap();
        let ms = measures_space(0, &z3, &caps()).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].value(&BitSet::new(0), &z3), z3.zero());
    }

    #[test]
    fn every_enumerated_measure_is_additive() {
        for s in [
            SemiringTable::boolean(),
            SemiringTable::zmod(2).unwrap(),
            SemiringTable::zmod(4).unwrap(),
        ] {
            for m in measures_space(3, &s, &caps()).unwrap() {
                assert!(is_finitely_additive(&m, &s));
            }
        }
    }

    #[test]
    fn boolean_measures_are_hyperspace_points() {
        // With idempotent addition a measure is the "meets the set C"
        // predicate of its support, and supports run over all subsets.
        let b = SemiringTable::boolean();
        for n in 0..=4usize {
            let x = FinPoset::discrete((0..n).map(|i| format!("x{i}")).collect());
            let v = vietoris(&x, &caps()).unwrap();
            let ms = measures_space(n, &b, &caps()).unwrap();
            assert_eq!(ms.len(), v.space.len());
            let mut supports: Vec<BitSet> = ms.iter().map(|m| m.support(&b)).collect();
            supports.sort();
            let mut subsets = v.subsets.clone();
            subsets.sort();
            assert_eq!(supports, subsets);
            for m in &ms {
                let c = m.support(&b);
                for w in subset_masks(n) {
                    let a = BitSet::from_mask(n, w);
                    assert_eq!(m.value(&a, &b) == 1, c.intersects(&a));
                }
            }
        }
    }

    #[test]
    fn parity_measures_are_not_hyperspace_points() {
        // The same count works out for Z/2, but the subbasic law fails:
        // additivity is exclusive-or, not "meets".
        let z2 = SemiringTable::zmod(2).unwrap();
        let ms = measures_space(2, &z2, &caps()).unwrap();
        let full = BitSet::full(2);
        let bad = ms
            .iter()
            .any(|m| (m.value(&full, &z2) == 1) != m.support(&z2).intersects(&full));
        assert!(bad);
    }

    #[test]
    fn integrate_zero_and_dirac() {
        let z3 = SemiringTable::zmod(3).unwrap();
        let zero = integrate_pushforward(&[0, 0, 0], &[0, 1, 2], 3, &z3);
        assert!(zero.point_values().iter().all(|&v| v == 0));
        let dirac = integrate_pushforward(&[0, 1, 0], &[0, 1, 2], 3, &z3);
        assert_eq!(dirac.point_values(), &[0, 1, 0]);
        assert_eq!(dirac.value(&BitSet::from_indices(3, [0, 1]), &z3), 1);
        assert_eq!(dirac.value(&BitSet::from_indices(3, [0, 2]), &z3), 0);
    }

    #[test]
    fn integration_counts_fibers_in_the_semiring() {
        // Five points mapped onto three; the indicator of a subset D
        // integrates to the measure counting D ∩ fiber in S.
        let z3 = SemiringTable::zmod(3).unwrap();
        let f = vec![0usize, 0, 1, 2, 2];
        let d = BitSet::from_indices(5, [0, 1, 3, 4]);
        let g: Vec<usize> = (0..5).map(|x| if d.contains(x) { 1 } else { 0 }).collect();
        let m = integrate_pushforward(&g, &f, 3, &z3);
        for t in 0..3 {
            let count = (0..5).filter(|&x| f[x] == t && d.contains(x)).count();
            assert_eq!(m.point_value(t), z3.nat(count));
        }
        assert!(is_finitely_additive(&m, &z3));
    }

    #[test]
    fn measure_enumeration_is_capped() {
        let z12 = SemiringTable::zmod(12).unwrap();
        assert!(matches!(
            measures_space(30, &z12, &caps()),
            Err(LayerError::CapExceeded { .. })
        ));
    }
}
