//! Finite partial orders.

use crate::bitset::BitSet;
use crate::order::OrderError;

/// A finite poset with named elements.
///
/// The order is stored as up-sets and down-sets per element, so `leq` is a
/// single bit probe. Construction validates reflexivity, antisymmetry and
/// transitivity; loaders that accept a bare relation close it first.
#[derive(Clone)]
pub struct FinPoset {
    names: Vec<String>,
    /// `up[i]` = indices j with i <= j (includes i).
    up: Vec<BitSet>,
    /// `down[i]` = indices j with j <= i (includes i).
    down: Vec<BitSet>,
}

impl FinPoset {
    /// Builds from a full relation matrix; `leq[i][j]` means i <= j.
    pub fn from_matrix(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Self, OrderError> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(OrderError::BadShape);
        }
        check_names(&names)?;
        for i in 0..n {
            if !leq[i][i] {
                return Err(OrderError::NotReflexive(names[i].clone()));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(OrderError::NotAntisymmetric(
                        names[i].clone(),
                        names[j].clone(),
                    ));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(OrderError::NotTransitive(
                            names[i].clone(),
                            names[j].clone(),
                            names[k].clone(),
                        ));
                    }
                }
            }
        }
        let mut up = vec![BitSet::new(n); n];
        let mut down = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        Ok(FinPoset { names, up, down })
    }

    /// Builds from generating pairs `(i, j)` meaning i <= j. The relation is
    /// closed reflexively and transitively; antisymmetry failures are errors.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(OrderError::BadShape);
            }
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(names, &leq)
    }

    /// Builds directly from up- and down-sets. The caller must guarantee the
    /// order axioms; used by the enumerator where validity holds by
    /// construction and revalidation would dominate the runtime.
    pub(crate) fn from_parts(names: Vec<String>, up: Vec<BitSet>, down: Vec<BitSet>) -> Self {
        debug_assert_eq!(names.len(), up.len());
        debug_assert_eq!(names.len(), down.len());
        FinPoset { names, up, down }
    }

    /// Discrete order on the given names.
    pub fn discrete(names: Vec<String>) -> Self {
        let n = names.len();
        Self::from_pairs(names, &[]).unwrap_or_else(|_| panic!("{} names invalid", n))
    }

    /// A chain x0 < x1 < .. with the given names, in order.
    pub fn chain(names: Vec<String>) -> Self {
        let pairs: Vec<_> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Self::from_pairs(names, &pairs).expect("chain names invalid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Elements `>= i`, as a set.
    pub fn up_set(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    /// Elements `<= i`, as a set.
    pub fn down_set(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    /// Immediate predecessors of `i`.
    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        let below: Vec<usize> = self.down[i].iter().filter(|&j| j != i).collect();
        below
            .iter()
            .copied()
            .filter(|&j| !below.iter().any(|&k| k != j && self.leq(j, k)))
            .collect()
    }

    /// Immediate successors of `i`.
    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        let above: Vec<usize> = self.up[i].iter().filter(|&j| j != i).collect();
        above
            .iter()
            .copied()
            .filter(|&j| !above.iter().any(|&k| k != j && self.leq(k, j)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.down[i].count() == 1)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.up[i].count() == 1)
            .collect()
    }

    /// The unique minimum, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].count() == self.len())
    }

    /// The unique maximum, if there is one.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i].count() == self.len())
    }

    /// Opposite order.
    pub fn opposite(&self) -> FinPoset {
        FinPoset {
            names: self.names.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|i| self.up[i].count() == 1)
    }

    pub fn is_downset(&self, s: &BitSet) -> bool {
        s.iter().all(|i| self.down[i].is_subset(s))
    }

    pub fn is_upset(&self, s: &BitSet) -> bool {
        s.iter().all(|i| self.up[i].is_subset(s))
    }

    /// Least downset containing `s`.
    pub fn downward_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.len());
        for i in s.iter() {
            out.union_with(&self.down[i]);
        }
        out
    }

    pub fn upward_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.len());
        for i in s.iter() {
            out.union_with(&self.up[i]);
        }
        out
    }

    /// Indices in some order extending the partial order (smaller first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count(), i));
        order
    }

    /// All downsets, smallest first. `cap` bounds the count; `None` on overflow.
    pub fn downsets_capped(&self, cap: usize) -> Option<Vec<BitSet>> {
        let order = self.linear_extension();
        let mut acc = Vec::new();
        let mut cur = BitSet::new(self.len());
        if !self.rec_downsets(&order, 0, &mut cur, &mut acc, cap) {
            return None;
        }
        acc.sort_by_key(|d| (d.count(), d.clone()));
        Some(acc)
    }

    /// All downsets of the poset.
    pub fn downsets(&self) -> Vec<BitSet> {
        self.downsets_capped(usize::MAX).unwrap()
    }

    fn rec_downsets(
        &self,
        order: &[usize],
        pos: usize,
        cur: &mut BitSet,
        acc: &mut Vec<BitSet>,
        cap: usize,
    ) -> bool {
        if pos == order.len() {
            if acc.len() >= cap {
                return false;
            }
            acc.push(cur.clone());
            return true;
        }
        let el = order[pos];
        // Leave `el` out.
        if !self.rec_downsets(order, pos + 1, cur, acc, cap) {
            return false;
        }
        // Put `el` in, if everything strictly below it is already in.
        let mut strictly_below = self.down[el].clone();
        strictly_below.remove(el);
        if strictly_below.is_subset(cur) {
            cur.insert(el);
            let ok = self.rec_downsets(order, pos + 1, cur, acc, cap);
            cur.remove(el);
            if !ok {
                return false;
            }
        }
        true
    }

    /// Number of downsets, or `None` if it exceeds `cap`.
    pub fn count_downsets_capped(&self, cap: usize) -> Option<usize> {
        if self.len() <= 64 {
            let count = self.downsets_masks().len();
            return (count <= cap).then_some(count);
        }
        let order = self.linear_extension();
        let mut cur = BitSet::new(self.len());
        let mut count = 0usize;
        if self.rec_count_downsets(&order, 0, &mut cur, &mut count, cap) {
            Some(count)
        } else {
            None
        }
    }

    fn rec_count_downsets(
        &self,
        order: &[usize],
        pos: usize,
        cur: &mut BitSet,
        count: &mut usize,
        cap: usize,
    ) -> bool {
        if pos == order.len() {
            *count += 1;
            return *count <= cap;
        }
        let el = order[pos];
        if !self.rec_count_downsets(order, pos + 1, cur, count, cap) {
            return false;
        }
        let mut strictly_below = self.down[el].clone();
        strictly_below.remove(el);
        if strictly_below.is_subset(cur) {
            cur.insert(el);
            let ok = self.rec_count_downsets(order, pos + 1, cur, count, cap);
            cur.remove(el);
            if !ok {
                return false;
            }
        }
        true
    }

    /// All downsets as bit masks, ascending; requires `len <= 64`.
    pub fn downsets_masks(&self) -> Vec<u64> {
        assert!(self.len() <= 64);
        let order = self.linear_extension();
        let strict_below: Vec<u64> = (0..self.len())
            .map(|i| self.down[i].as_mask() & !(1u64 << i))
            .collect();
        let mut acc = Vec::new();
        fn rec(order: &[usize], strict: &[u64], pos: usize, cur: u64, acc: &mut Vec<u64>) {
            if pos == order.len() {
                acc.push(cur);
                return;
            }
            let el = order[pos];
            rec(order, strict, pos + 1, cur, acc);
            if strict[el] & !cur == 0 {
                rec(order, strict, pos + 1, cur | 1 << el, acc);
            }
        }
        rec(&order, &strict_below, 0, 0, &mut acc);
        acc.sort_unstable_by_key(|m| (m.count_ones(), *m));
        acc
    }

    /// All upsets (downsets of the opposite).
    pub fn upsets(&self) -> Vec<BitSet> {
        self.opposite().downsets()
    }

    /// Restriction to a subset of elements, keeping their names.
    pub fn induced(&self, keep: &[usize]) -> FinPoset {
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let mut pairs = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.leq(i, j) {
                    pairs.push((a, b));
                }
            }
        }
        FinPoset::from_pairs(names, &pairs).expect("induced order is valid")
    }

    /// Checks `f: self -> other` for monotonicity; first violation if any.
    pub fn monotone_violation(&self, other: &FinPoset, f: &[usize]) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.leq(i, j) && !other.leq(f[i], f[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self, other: &FinPoset, f: &[usize]) -> bool {
        f.len() == self.len()
            && f.iter().all(|&v| v < other.len())
            && self.monotone_violation(other, f).is_none()
    }

    /// All monotone maps `self -> other`, as index vectors, lexicographic in
    /// element order.
    pub fn monotone_maps(&self, other: &FinPoset) -> Vec<Vec<usize>> {
        let order = self.linear_extension();
        let mut partial = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        self.rec_monotone(other, &order, 0, &mut partial, &mut out);
        out.sort();
        out
    }

    fn rec_monotone(
        &self,
        other: &FinPoset,
        order: &[usize],
        pos: usize,
        partial: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == order.len() {
            out.push(partial.clone());
            return;
        }
        let el = order[pos];
        'target: for t in 0..other.len() {
            for &done in &order[..pos] {
                if self.leq(done, el) && !other.leq(partial[done], t) {
                    continue 'target;
                }
                if self.leq(el, done) && !other.leq(t, partial[done]) {
                    continue 'target;
                }
            }
            partial[el] = t;
            self.rec_monotone(other, order, pos + 1, partial, out);
            partial[el] = usize::MAX;
        }
    }
}

fn check_names(names: &[String]) -> Result<(), OrderError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(OrderError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// Names a set of element indices like `{a,b}` using the poset's names.
pub fn set_name(p: &FinPoset, s: &BitSet) -> String {
    let mut parts: Vec<&str> = s.iter().map(|i| p.name(i)).collect();
    parts.sort();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{}", i)).collect()
    }

    pub(crate) fn diamond_poset() -> FinPoset {
        // 0 < a,b < 1 with a,b incomparable
        FinPoset::from_pairs(
            vec!["0".into(), "a".into(), "b".into(), "1".into()],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn rejects_cycles() {
        let err = FinPoset::from_pairs(named(2), &[(0, 1), (1, 0)]);
        assert!(matches!(err, Err(OrderError::NotAntisymmetric(_, _))));
    }

    #[test]
    fn closes_transitively() {
        let p = FinPoset::from_pairs(named(3), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.bottom(), Some(0));
        assert_eq!(p.top(), Some(2));
    }

    #[test]
    fn covers_in_diamond() {
        let p = diamond_poset();
        assert_eq!(p.lower_covers(3), vec![1, 2]);
        assert_eq!(p.upper_covers(0), vec![1, 2]);
        assert_eq!(p.minimal_elements(), vec![0]);
        assert_eq!(p.maximal_elements(), vec![3]);
    }

    #[test]
    fn downsets_of_diamond() {
        let p = diamond_poset();
        let ds = p.downsets();
        // {}, {0}, {0,a}, {0,b}, {0,a,b}, {0,a,b,1}
        assert_eq!(ds.len(), 6);
        assert!(ds.iter().all(|d| p.is_downset(d)));
        assert_eq!(p.count_downsets_capped(100), Some(6));
        assert_eq!(p.count_downsets_capped(5), None);
        assert!(p.downsets_capped(5).is_none());
    }

    #[test]
    fn downsets_of_antichain() {
        let p = FinPoset::discrete(named(4));
        assert_eq!(p.downsets().len(), 16);
        assert!(p.is_discrete());
    }

    #[test]
    fn monotone_map_count_chain_to_chain() {
        // Monotone maps from an m-chain to an n-chain: C(n+m-1, m).
        let c3 = FinPoset::chain(named(3));
        let c2 = FinPoset::chain(vec!["a".into(), "b".into()]);
        assert_eq!(c3.monotone_maps(&c2).len(), 4);
        assert_eq!(c2.monotone_maps(&c3).len(), 6);
        for f in c3.monotone_maps(&c2) {
            assert!(c3.is_monotone(&c2, &f));
        }
    }

    #[test]
    fn monotone_maps_from_empty() {
        let e = FinPoset::discrete(vec![]);
        let c2 = FinPoset::chain(named(2));
        assert_eq!(e.monotone_maps(&c2).len(), 1);
        assert!(e.monotone_maps(&c2)[0].is_empty());
    }

    #[test]
    fn induced_sub_poset() {
        let p = diamond_poset();
        let q = p.induced(&[0, 1, 3]);
        assert_eq!(q.len(), 3);
        assert!(q.leq(0, 2));
        assert_eq!(q.name(1), "a");
    }

    #[test]
    fn closure_ops() {
        let p = diamond_poset();
        let s = BitSet::from_indices(4, [1, 2]);
        assert_eq!(p.downward_closure(&s).to_vec(), vec![0, 1, 2]);
        assert_eq!(p.upward_closure(&s).to_vec(), vec![1, 2, 3]);
        assert!(!p.is_downset(&s));
        assert!(!p.is_upset(&s));
    }
}
