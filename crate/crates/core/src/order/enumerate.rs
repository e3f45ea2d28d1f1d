//! Exhaustive enumeration of posets and distributive lattices up to
//! isomorphism.
//!
//! Posets are generated level by level: every n-element poset arises from an
//! (n-1)-element poset by adding a maximal element whose strict downset is a
//! downset of the smaller poset. Each level is deduplicated by invariant
//! bucketing plus explicit isomorphism tests.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::order::iso;
use crate::order::lattice::{downset_lattice, FinDistLattice};
use crate::order::poset::FinPoset;

fn extend_with_max(p: &FinPoset, strict_down: &BitSet) -> FinPoset {
    let n = p.len();
    debug_assert!(p.is_downset(strict_down));
    let mut names: Vec<String> = (0..n).map(|i| p.name(i).to_string()).collect();
    names.push(format!("e{}", n));
    let mut up: Vec<BitSet> = Vec::with_capacity(n + 1);
    let mut down: Vec<BitSet> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut u = p.up_set(i).resized(n + 1);
        if strict_down.contains(i) {
            u.insert(n);
        }
        up.push(u);
        down.push(p.down_set(i).resized(n + 1));
    }
    let mut new_down = strict_down.resized(n + 1);
    new_down.insert(n);
    up.push(BitSet::singleton(n + 1, n));
    down.push(new_down);
    FinPoset::from_parts(names, up, down)
}

struct Entry {
    poset: FinPoset,
    classes: Vec<u64>,
}

fn dedup_push(buckets: &mut HashMap<u64, Vec<Entry>>, cand: FinPoset) {
    let classes = iso::classes(&cand);
    let key = iso::key_from_classes(cand.len(), &classes);
    let bucket = buckets.entry(key).or_default();
    if !bucket
        .iter()
        .any(|e| iso::isomorphism_with(&e.poset, &e.classes, &cand, &classes).is_some())
    {
        bucket.push(Entry {
            poset: cand,
            classes,
        });
    }
}

fn drain_sorted(buckets: HashMap<u64, Vec<Entry>>) -> Vec<FinPoset> {
    let mut keyed: Vec<(u64, Vec<Entry>)> = buckets.into_iter().collect();
    keyed.sort_by_key(|(k, _)| *k);
    keyed
        .into_iter()
        .flat_map(|(_, v)| v.into_iter().map(|e| e.poset))
        .collect()
}

fn next_level(level: &[FinPoset], keep: impl Fn(&FinPoset, &[u64], u64) -> bool) -> Vec<FinPoset> {
    let mut buckets: HashMap<u64, Vec<Entry>> = HashMap::new();
    for p in level {
        let masks = p.downsets_masks();
        for &d in &masks {
            if !keep(p, &masks, d) {
                continue;
            }
            let cand = extend_with_max(p, &BitSet::from_mask(p.len(), d));
            dedup_push(&mut buckets, cand);
        }
    }
    drain_sorted(buckets)
}

/// All posets with exactly `n` elements, up to isomorphism.
pub fn posets_exactly(n: usize) -> Vec<FinPoset> {
    let mut level = vec![FinPoset::discrete(vec![])];
    for _ in 0..n {
        level = next_level(&level, |_, _, _| true);
    }
    level
}

/// All posets with at most `n` elements, up to isomorphism, smaller first.
pub fn posets_up_to(n: usize) -> Vec<FinPoset> {
    let mut out = Vec::new();
    let mut level = vec![FinPoset::discrete(vec![])];
    out.extend(level.iter().cloned());
    for _ in 0..n {
        level = next_level(&level, |_, _, _| true);
        out.extend(level.iter().cloned());
    }
    out
}

/// All bounded distributive lattices with at most `max_elems` elements, up
/// to isomorphism, via their join-irreducible posets: these are exactly the
/// downset lattices of posets with at most `max_elems` downsets.
pub fn dist_lattices_up_to(max_elems: usize) -> Vec<FinDistLattice> {
    assert!(max_elems >= 1);
    let mut out = Vec::new();
    // A poset with many elements can still have few downsets (chains), so
    // levels run until no poset survives the cap.
    let mut level = vec![FinPoset::discrete(vec![])];
    out.push(downset_lattice(&level[0]).0);
    loop {
        // Extending by the downset d adds one new downset for every old
        // downset containing d, so the count of the extension is known
        // without building it.
        level = next_level(&level, |_, masks, d| {
            let added = masks.iter().filter(|&&e| e & d == d).count();
            masks.len() + added <= max_elems
        });
        if level.is_empty() {
            break;
        }
        out.extend(level.iter().map(|p| downset_lattice(p).0));
    }
    out
}

/// Distributive lattices whose join-irreducible poset has at most `max_ji`
/// elements, up to isomorphism.
pub fn dist_lattices_with_ji_up_to(max_ji: usize) -> Vec<FinDistLattice> {
    posets_up_to(max_ji)
        .iter()
        .map(|p| downset_lattice(p).0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_known_values() {
        // Unlabelled posets on 0..=6 points: 1, 1, 2, 5, 16, 63, 318.
        let expected = [1usize, 1, 2, 5, 16, 63, 318];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(posets_exactly(n).len(), want, "n = {}", n);
        }
    }

    #[test]
    fn cumulative_count() {
        assert_eq!(posets_up_to(5).len(), 1 + 1 + 2 + 5 + 16 + 63);
    }

    #[test]
    fn enumerated_posets_are_pairwise_non_isomorphic() {
        let ps = posets_exactly(5);
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                assert!(!iso::are_isomorphic(&ps[i], &ps[j]));
            }
        }
    }

    #[test]
    fn lattice_counts_match_known_values() {
        // Unlabelled bounded distributive lattices with n elements
        // (n = 1..=8): 1, 1, 1, 2, 3, 5, 8, 15.
        let lats = dist_lattices_up_to(8);
        let mut by_size = [0usize; 9];
        for l in &lats {
            by_size[l.len()] += 1;
        }
        assert_eq!(&by_size[1..], &[1, 1, 1, 2, 3, 5, 8, 15]);
    }

    #[test]
    fn ji_bounded_enumeration() {
        // Downset lattices of the 16 posets on <= 3 points (cumulative
        // 1 + 1 + 2 + 5 = 9 classes).
        let lats = dist_lattices_with_ji_up_to(3);
        assert_eq!(lats.len(), 9);
        assert!(lats.iter().all(|l| l.join_irreducible_indices().len() <= 3));
    }
}
