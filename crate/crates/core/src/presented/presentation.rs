//! Lattice presentations and their point sets.
//!
//! A presentation is a generator list plus equations between terms. Its
//! points are the generator subsets S whose valuation satisfies every
//! equation; they correspond to the homomorphisms into the two-element
//! lattice, and separate elements completely, so extents of points decide
//! the word problem.

use std::sync::atomic::{AtomicU64, Ordering};

use serde_json::{json, Value};

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::order::poset::FinPoset;
use crate::presented::term::Term;
use crate::presented::PresentError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatKind {
    /// Bounded distributive lattice: no negation in terms.
    Dl,
    /// Boolean algebra: negation allowed.
    Ba,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub left: Term,
    pub right: Term,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub kind: LatKind,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(
        kind: LatKind,
        generators: Vec<String>,
        relations: Vec<Relation>,
    ) -> Result<Self, PresentError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relations {
            r.left.check_gens(generators.len())?;
            r.right.check_gens(generators.len())?;
            if kind == LatKind::Dl && (r.left.contains_not() || r.right.contains_not()) {
                return Err(PresentError::NegationInDistributive);
            }
        }
        Ok(Presentation {
            kind,
            generators,
            relations,
        })
    }

    /// Free bounded distributive lattice presentation: no relations.
    pub fn free_dl(generators: Vec<String>) -> Result<Self, PresentError> {
        Self::new(LatKind::Dl, generators, vec![])
    }

    /// Free Boolean algebra presentation: no relations.
    pub fn free_ba(generators: Vec<String>) -> Result<Self, PresentError> {
        Self::new(LatKind::Ba, generators, vec![])
    }

    pub fn gen_index(&self, name: &str) -> Result<usize, PresentError> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| PresentError::UnknownGenerator(name.to_string()))
    }

    /// All points: generator subsets satisfying every relation, ascending.
    ///
    /// The search walks generators in index order and checks each relation
    /// as soon as its last generator is decided, so presentations whose
    /// relations are local to small index windows prune early even with
    /// dozens of generators.
    pub fn points(&self, caps: &Caps) -> Result<Vec<BitSet>, PresentError> {
        let g = self.generators.len();
        let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); g];
        for (ri, r) in self.relations.iter().enumerate() {
            if r.left == r.right {
                continue;
            }
            match r.left.max_gen().max(r.right.max_gen()) {
                Some(last) => by_last[last].push(ri),
                None => {
                    // Ground equation: holds or kills every point.
                    let empty = BitSet::new(g);
                    if r.left.eval(&empty) != r.right.eval(&empty) {
                        return Ok(vec![]);
                    }
                }
            }
        }
        let mut acc = Vec::new();
        let mut cur = BitSet::new(g);
        let mut nodes = 0u64;
        self.search(0, &by_last, &mut cur, &mut acc, &mut nodes, caps)?;
        acc.sort();
        Ok(acc)
    }

    fn search(
        &self,
        depth: usize,
        by_last: &[Vec<usize>],
        cur: &mut BitSet,
        acc: &mut Vec<BitSet>,
        nodes: &mut u64,
        caps: &Caps,
    ) -> Result<(), PresentError> {
        *nodes += 1;
        if *nodes > caps.max_nodes {
            return Err(PresentError::CapExceeded {
                what: "point search nodes".into(),
                cap: caps.max_nodes as usize,
            });
        }
        if depth == self.generators.len() {
            if acc.len() >= caps.max_points {
                return Err(PresentError::CapExceeded {
                    what: "points".into(),
                    cap: caps.max_points,
                });
            }
            acc.push(cur.clone());
            return Ok(());
        }
        for include in [false, true] {
            if include {
                cur.insert(depth);
            }
            let ok = by_last[depth]
                .iter()
                .all(|&ri| self.relations[ri].left.eval(cur) == self.relations[ri].right.eval(cur));
            if ok {
                self.search(depth + 1, by_last, cur, acc, nodes, caps)?;
            }
            if include {
                cur.remove(depth);
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": match self.kind { LatKind::Dl => "DL", LatKind::Ba => "BA" },
            "generators": self.generators,
            "relations": self.relations.iter().map(|r| json!({
                "left": r.left.to_json(&self.generators),
                "right": r.right.to_json(&self.generators),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, PresentError> {
        let kind = match v.get("kind").and_then(|k| k.as_str()) {
            Some("DL") | Some("dl") => LatKind::Dl,
            Some("BA") | Some("ba") => LatKind::Ba,
            other => {
                return Err(PresentError::BadTerm(format!(
                    "kind must be \"DL\" or \"BA\", got {:?}",
                    other
                )))
            }
        };
        let generators: Vec<String> = v
            .get("generators")
            .and_then(|g| g.as_array())
            .ok_or_else(|| PresentError::BadTerm("generators must be an array".into()))?
            .iter()
            .map(|g| {
                g.as_str()
                    .map(String::from)
                    .ok_or_else(|| PresentError::BadTerm("generator names must be strings".into()))
            })
            .collect::<Result<_, _>>()?;
        let mut relations = Vec::new();
        if let Some(rels) = v.get("relations") {
            let rels = rels
                .as_array()
                .ok_or_else(|| PresentError::BadTerm("relations must be an array".into()))?;
            for r in rels {
                let left = r
                    .get("left")
                    .ok_or_else(|| PresentError::BadTerm("relation needs left".into()))?;
                let right = r
                    .get("right")
                    .ok_or_else(|| PresentError::BadTerm("relation needs right".into()))?;
                relations.push(Relation {
                    left: Term::from_json(left, &generators)?,
                    right: Term::from_json(right, &generators)?,
                });
            }
        }
        Presentation::new(kind, generators, relations)
    }

    pub fn parse(text: &str) -> Result<Self, PresentError> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| PresentError::Json(e.to_string()))?;
        Self::from_json(&v)
    }
}

static NEXT_LATTICE_ID: AtomicU64 = AtomicU64::new(1);

/// A presentation together with its computed point set. Elements are
/// represented by extents; comparison is extent inclusion.
#[derive(Clone)]
pub struct PresentedLattice {
    id: u64,
    pub presentation: Presentation,
    points: Vec<BitSet>,
    /// True when no point survived the relations, so 0 = 1 and the quotient
    /// is the one-element lattice.
    pub degenerate: bool,
}

/// An element of a presented lattice: a representative term plus its extent
/// over the lattice's points.
#[derive(Clone, Debug)]
pub struct PresentedElement {
    lattice: u64,
    pub term: Term,
    pub extent: BitSet,
}

impl PresentedLattice {
    pub fn quotient(presentation: Presentation, caps: &Caps) -> Result<Self, PresentError> {
        let points = presentation.points(caps)?;
        let degenerate = points.is_empty();
        Ok(PresentedLattice {
            id: NEXT_LATTICE_ID.fetch_add(1, Ordering::Relaxed),
            presentation,
            points,
            degenerate,
        })
    }

    pub fn points(&self) -> &[BitSet] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn element(&self, term: Term) -> Result<PresentedElement, PresentError> {
        term.check_gens(self.presentation.generators.len())?;
        if self.presentation.kind == LatKind::Dl && term.contains_not() {
            return Err(PresentError::NegationInDistributive);
        }
        let extent = BitSet::from_indices(
            self.points.len(),
            self.points
                .iter()
                .enumerate()
                .filter(|(_, p)| term.eval(p))
                .map(|(i, _)| i),
        );
        Ok(PresentedElement {
            lattice: self.id,
            term,
            extent,
        })
    }

    pub fn generator(&self, i: usize) -> PresentedElement {
        self.element(Term::Gen(i)).expect("generator index valid")
    }

    pub fn top(&self) -> PresentedElement {
        self.element(Term::Top).unwrap()
    }

    pub fn bot(&self) -> PresentedElement {
        self.element(Term::Bot).unwrap()
    }

    fn same_lattice(&self, e: &PresentedElement) -> Result<(), PresentError> {
        if e.lattice != self.id {
            return Err(PresentError::MixedLattice);
        }
        Ok(())
    }

    /// Order by extents; decides the word problem for this presentation.
    pub fn leq(&self, a: &PresentedElement, b: &PresentedElement) -> Result<bool, PresentError> {
        self.same_lattice(a)?;
        self.same_lattice(b)?;
        Ok(a.extent.is_subset(&b.extent))
    }

    pub fn equal(&self, a: &PresentedElement, b: &PresentedElement) -> Result<bool, PresentError> {
        self.same_lattice(a)?;
        self.same_lattice(b)?;
        Ok(a.extent == b.extent)
    }

    pub fn meet(
        &self,
        a: &PresentedElement,
        b: &PresentedElement,
    ) -> Result<PresentedElement, PresentError> {
        self.same_lattice(a)?;
        self.same_lattice(b)?;
        Ok(PresentedElement {
            lattice: self.id,
            term: Term::meet_of(vec![a.term.clone(), b.term.clone()]),
            extent: a.extent.intersection(&b.extent),
        })
    }

    pub fn join(
        &self,
        a: &PresentedElement,
        b: &PresentedElement,
    ) -> Result<PresentedElement, PresentError> {
        self.same_lattice(a)?;
        self.same_lattice(b)?;
        Ok(PresentedElement {
            lattice: self.id,
            term: Term::join_of(vec![a.term.clone(), b.term.clone()]),
            extent: a.extent.union(&b.extent),
        })
    }

    pub fn neg(&self, a: &PresentedElement) -> Result<PresentedElement, PresentError> {
        self.same_lattice(a)?;
        if self.presentation.kind == LatKind::Dl {
            return Err(PresentError::NegationInDistributive);
        }
        Ok(PresentedElement {
            lattice: self.id,
            term: Term::Not(Box::new(a.term.clone())),
            extent: a.extent.complement(),
        })
    }

    /// The dual space: points under the separation order.
    ///
    /// Every element extent is built from generator extents by meets and
    /// joins (plus complements for Boolean presentations), so membership of
    /// generators decides separation. For distributive presentations the
    /// specialization order is reverse inclusion of the generator sets; with
    /// complements available distinct points are always separated both ways,
    /// so Boolean duals are discrete.
    pub fn dual_space(&self) -> FinPoset {
        let names: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                let mut parts: Vec<&str> =
                    p.iter().map(|i| self.presentation.generators[i].as_str()).collect();
                parts.sort();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        let mut pairs = Vec::new();
        if self.presentation.kind == LatKind::Dl {
            for (i, p) in self.points.iter().enumerate() {
                for (j, q) in self.points.iter().enumerate() {
                    if q.is_subset(p) {
                        pairs.push((i, j));
                    }
                }
            }
        }
        FinPoset::from_pairs(names, &pairs).expect("separation order is a partial order")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn free_dl_points_are_all_subsets() {
        let p = Presentation::free_dl(vec!["g1".into(), "g2".into()]).unwrap();
        let pts = p.points(&caps()).unwrap();
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn quotient_filters_points() {
        // g1 /\ g2 = g1 says g1 <= g2: the point {g1} violates it.
        let p = Presentation::new(
            LatKind::Dl,
            vec!["g1".into(), "g2".into()],
            vec![Relation {
                left: Term::And(vec![Term::Gen(0), Term::Gen(1)]),
                right: Term::Gen(0),
            }],
        )
        .unwrap();
        let pts = p.points(&caps()).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(!pts.contains(&BitSet::from_indices(2, [0])));
        let q = PresentedLattice::quotient(p, &caps()).unwrap();
        let g1 = q.generator(0);
        let g2 = q.generator(1);
        assert!(q.leq(&g1, &g2).unwrap());
        assert!(!q.leq(&g2, &g1).unwrap());
    }

    #[test]
    fn relation_to_bottom() {
        let p = Presentation::new(
            LatKind::Dl,
            vec!["g".into()],
            vec![Relation {
                left: Term::Gen(0),
                right: Term::Bot,
            }],
        )
        .unwrap();
        let q = PresentedLattice::quotient(p, &caps()).unwrap();
        assert_eq!(q.point_count(), 1);
        let g = q.generator(0);
        assert!(q.equal(&g, &q.bot()).unwrap());
        assert!(!q.degenerate);
    }

    #[test]
    fn inconsistent_presentation_is_degenerate() {
        let p = Presentation::new(
            LatKind::Ba,
            vec!["g".into()],
            vec![Relation {
                left: Term::Top,
                right: Term::Bot,
            }],
        )
        .unwrap();
        let q = PresentedLattice::quotient(p, &caps()).unwrap();
        assert!(q.degenerate);
        assert!(q.equal(&q.top(), &q.bot()).unwrap());
    }

    #[test]
    fn free_ba_extent_of_conjunction() {
        let p = Presentation::free_ba(vec!["g1".into(), "g2".into()]).unwrap();
        let q = PresentedLattice::quotient(p, &caps()).unwrap();
        assert_eq!(q.point_count(), 4);
        let e = q
            .element(Term::And(vec![
                Term::Gen(0),
                Term::Not(Box::new(Term::Gen(1))),
            ]))
            .unwrap();
        assert_eq!(e.extent.count(), 1);
        let witness = q.points()[e.extent.first().unwrap()].clone();
        assert_eq!(witness, BitSet::from_indices(2, [0]));
    }

    #[test]
    fn negation_rejected_in_dl() {
        let p = Presentation::new(
            LatKind::Dl,
            vec!["g".into()],
            vec![Relation {
                left: Term::Not(Box::new(Term::Gen(0))),
                right: Term::Top,
            }],
        );
        assert!(matches!(p, Err(PresentError::NegationInDistributive)));
    }

    #[test]
    fn mixed_lattice_detected() {
        let p1 = PresentedLattice::quotient(
            Presentation::free_dl(vec!["g".into()]).unwrap(),
            &caps(),
        )
        .unwrap();
        let p2 = PresentedLattice::quotient(
            Presentation::free_dl(vec!["g".into()]).unwrap(),
            &caps(),
        )
        .unwrap();
        let a = p1.generator(0);
        let b = p2.generator(0);
        assert!(matches!(p1.leq(&a, &b), Err(PresentError::MixedLattice)));
    }

    #[test]
    fn point_cap_enforced() {
        let p = Presentation::free_ba((0..10).map(|i| format!("g{}", i)).collect()).unwrap();
        let small = Caps::default().with_max_points(100);
        assert!(matches!(
            p.points(&small),
            Err(PresentError::CapExceeded { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = Presentation::new(
            LatKind::Ba,
            vec!["a".into(), "b".into()],
            vec![Relation {
                left: Term::Or(vec![Term::Gen(0), Term::Gen(1)]),
                right: Term::Top,
            }],
        )
        .unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back = Presentation::parse(&text).unwrap();
        assert_eq!(back.kind, LatKind::Ba);
        assert_eq!(back.relations, p.relations);
    }

    #[test]
    fn dual_space_of_free_dl_on_two() {
        let q = PresentedLattice::quotient(
            Presentation::free_dl(vec!["g1".into(), "g2".into()]).unwrap(),
            &caps(),
        )
        .unwrap();
        let d = q.dual_space();
        assert_eq!(d.len(), 4);
        // Reverse inclusion: {g1,g2} is the bottom point, {} the top.
        let bot = d.index_of("{g1,g2}").unwrap();
        let top = d.index_of("{}").unwrap();
        assert_eq!(d.bottom(), Some(bot));
        assert_eq!(d.top(), Some(top));
    }

    #[test]
    fn dual_space_of_ba_is_discrete() {
        let q = PresentedLattice::quotient(
            Presentation::free_ba(vec!["g1".into(), "g2".into()]).unwrap(),
            &caps(),
        )
        .unwrap();
        assert!(q.dual_space().is_discrete());
    }
}
