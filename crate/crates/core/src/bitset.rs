//! Fixed-width bit sets over `{0, .., len-1}`.
//!
//! Everything in this crate that is "a set of points" (extents, downsets,
//! subsets of atoms, successor sets in towers) is one of these. Width is
//! fixed at construction; combining sets of different widths panics.

use std::cmp::Ordering;
use std::fmt;

const BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    blocks: Vec<u64>,
}

impl BitSet {
    /// Empty set of the given width.
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            blocks: vec![0; (len + BITS - 1) / BITS],
        }
    }

    /// Full set `{0, .., len-1}`.
    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for b in s.blocks.iter_mut() {
            *b = !0;
        }
        s.trim();
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = Self::new(len);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, iter: I) -> Self {
        let mut s = Self::new(len);
        for i in iter {
            s.insert(i);
        }
        s
    }

    /// Interprets the low `len` bits of `mask` (requires `len <= 64`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= BITS);
        let mut s = Self::new(len);
        if len > 0 {
            s.blocks[0] = mask;
            s.trim();
        }
        s
    }

    /// The low word of the set (requires `len <= 64`).
    pub fn as_mask(&self) -> u64 {
        assert!(self.len <= BITS);
        if self.blocks.is_empty() {
            0
        } else {
            self.blocks[0]
        }
    }

    fn trim(&mut self) {
        let used = self.len % BITS;
        if used != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        if self.len == 0 {
            self.blocks.clear();
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i / BITS] >> (i % BITS) & 1 != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {} out of range {}", i, self.len);
        self.blocks[i / BITS] |= 1 << (i % BITS);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len);
        self.blocks[i / BITS] &= !(1 << (i % BITS));
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.len, other.len, "bit set width mismatch");
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for b in s.blocks.iter_mut() {
            *b = !*b;
        }
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check(other);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check(other);
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    /// Indices of set bits, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(w, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let t = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(w * BITS + t)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// The same set viewed at a larger width.
    pub fn resized(&self, len: usize) -> BitSet {
        assert!(len >= self.len);
        let mut s = BitSet::new(len);
        s.blocks[..self.blocks.len()].copy_from_slice(&self.blocks);
        s
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.blocks.iter().rev().cmp(other.blocks.iter().rev()))
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All subsets of `{0, .., n-1}` as masks, in numeric order (requires `n <= 20`
/// in practice; asserts `n < 32` to keep the iterator total).
pub fn subset_masks(n: usize) -> impl Iterator<Item = u64> {
    assert!(n < 32, "subset enumeration out of range");
    0..(1u64 << n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(64));
        assert!(!s.contains(63));
        assert_eq!(s.count(), 3);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.count(), 2);
    }

    #[test]
    fn full_and_complement() {
        let s = BitSet::full(70);
        assert_eq!(s.count(), 70);
        assert!(s.complement().is_empty());
        let t = BitSet::from_indices(70, [3, 69]);
        let c = t.complement();
        assert_eq!(c.count(), 68);
        assert!(!c.contains(69));
        assert!(c.contains(68));
    }

    #[test]
    fn subset_and_order() {
        let a = BitSet::from_indices(10, [1, 3]);
        let b = BitSet::from_indices(10, [1, 3, 7]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(a < b);
        assert!(BitSet::new(10) < a);
    }

    #[test]
    fn zero_width() {
        let s = BitSet::new(0);
        assert!(s.is_empty());
        assert_eq!(s.complement(), s);
        assert_eq!(BitSet::full(0), s);
    }

    #[test]
    fn mask_round_trip() {
        for m in subset_masks(5) {
            assert_eq!(BitSet::from_mask(5, m).as_mask(), m);
        }
    }
}
