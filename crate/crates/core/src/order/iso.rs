//! Poset isomorphism testing.
//!
//! Elements are first partitioned by an iterated refinement invariant
//! (hash of own class plus the class multisets below and above); matching
//! then backtracks inside compatible classes only. On the structured posets
//! that arise here the refinement usually leaves singleton classes.

use crate::order::poset::FinPoset;

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-element invariant classes after a fixed number of refinement rounds.
/// The computation is label-independent: an isomorphism always carries an
/// element to one with the same class value. Neighbour multisets enter via a
/// commutative sum, so no sorting is needed.
fn refine(p: &FinPoset) -> Vec<u64> {
    let n = p.len();
    let mut class: Vec<u64> = (0..n)
        .map(|i| mix(((p.down_set(i).count() as u64) << 32) | p.up_set(i).count() as u64))
        .collect();
    let mut next = vec![0u64; n];
    for round in 0..3u64 {
        for i in 0..n {
            let mut below = 0u64;
            for j in p.down_set(i).iter() {
                below = below.wrapping_add(mix(class[j] ^ 0x5b5b));
            }
            let mut above = 0u64;
            for j in p.up_set(i).iter() {
                above = above.wrapping_add(mix(class[j] ^ 0xa7a7));
            }
            next[i] = mix(class[i] ^ mix(below).rotate_left(7) ^ mix(above).rotate_left(39) ^ round);
        }
        std::mem::swap(&mut class, &mut next);
    }
    class
}

/// Invariant classes for reuse across several isomorphism tests against the
/// same poset.
pub(crate) fn classes(p: &FinPoset) -> Vec<u64> {
    refine(p)
}

pub(crate) fn key_from_classes(n: usize, class: &[u64]) -> u64 {
    let sum = class.iter().fold(0u64, |a, &c| a.wrapping_add(mix(c)));
    mix(sum ^ (n as u64) << 48)
}

/// A hashable key equal on isomorphic posets. Unequal keys prove
/// non-isomorphism; equal keys still need a search.
pub fn invariant_key(p: &FinPoset) -> u64 {
    key_from_classes(p.len(), &refine(p))
}

/// An order isomorphism `p -> q` as an index vector, if one exists.
pub fn isomorphism(p: &FinPoset, q: &FinPoset) -> Option<Vec<usize>> {
    isomorphism_with(p, &refine(p), q, &refine(q))
}

pub(crate) fn isomorphism_with(
    p: &FinPoset,
    cp: &[u64],
    q: &FinPoset,
    cq: &[u64],
) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let mut pp = cp.to_vec();
    let mut pq = cq.to_vec();
    pp.sort_unstable();
    pq.sort_unstable();
    if pp != pq {
        return None;
    }
    let n = p.len();
    // Assign scarcest classes first.
    let mut order: Vec<usize> = (0..n).collect();
    let count_in = |cls: u64| cp.iter().filter(|&&c| c == cls).count();
    order.sort_by_key(|&i| (count_in(cp[i]), i));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(p, q, cp, cq, &order, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn assign(
    p: &FinPoset,
    q: &FinPoset,
    cp: &[u64],
    cq: &[u64],
    order: &[usize],
    pos: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let i = order[pos];
    'cand: for t in 0..q.len() {
        if used[t] || cq[t] != cp[i] {
            continue;
        }
        for &done in &order[..pos] {
            if p.leq(done, i) != q.leq(image[done], t) || p.leq(i, done) != q.leq(t, image[done]) {
                continue 'cand;
            }
        }
        image[i] = t;
        used[t] = true;
        if assign(p, q, cp, cq, order, pos + 1, image, used) {
            return true;
        }
        image[i] = usize::MAX;
        used[t] = false;
    }
    false
}

pub fn are_isomorphic(p: &FinPoset, q: &FinPoset) -> bool {
    isomorphism(p, q).is_some()
}

/// Checks that `f` is an order isomorphism `p -> q` (bijective, reflecting).
pub fn is_isomorphism(p: &FinPoset, q: &FinPoset, f: &[usize]) -> bool {
    if p.len() != q.len() || f.len() != p.len() {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &v in f {
        if v >= q.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    for i in 0..p.len() {
        for j in 0..p.len() {
            if p.leq(i, j) != q.leq(f[i], f[j]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(n: usize, rel: &[(usize, usize)]) -> FinPoset {
        let names = (0..n).map(|i| format!("e{}", i)).collect();
        FinPoset::from_pairs(names, rel).unwrap()
    }

    #[test]
    fn relabelled_diamond() {
        let a = pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let b = pairs(4, &[(3, 2), (3, 1), (2, 0), (1, 0)]);
        let f = isomorphism(&a, &b).expect("isomorphic");
        assert!(is_isomorphism(&a, &b, &f));
        assert_eq!(invariant_key(&a), invariant_key(&b));
    }

    #[test]
    fn chain_vs_antichain() {
        let c = pairs(3, &[(0, 1), (1, 2)]);
        let a = pairs(3, &[]);
        assert!(!are_isomorphic(&c, &a));
        assert_ne!(invariant_key(&c), invariant_key(&a));
    }

    #[test]
    fn v_vs_lambda() {
        // One minimum under two maximals vs one maximum over two minimals.
        let v = pairs(3, &[(0, 1), (0, 2)]);
        let l = pairs(3, &[(1, 0), (2, 0)]);
        assert!(!are_isomorphic(&v, &l));
        assert!(are_isomorphic(&v, &l.opposite()));
    }

    #[test]
    fn six_element_crown() {
        // The 3-crown has a nontrivial automorphism group; matching must not
        // depend on labelling.
        let c1 = pairs(6, &[(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)]);
        let c2 = pairs(6, &[(5, 0), (5, 1), (4, 1), (4, 2), (3, 2), (3, 0)]);
        assert!(are_isomorphic(&c1, &c2.opposite()));
    }

    #[test]
    fn empty_posets() {
        let e1 = pairs(0, &[]);
        let e2 = pairs(0, &[]);
        assert!(are_isomorphic(&e1, &e2));
    }
}
