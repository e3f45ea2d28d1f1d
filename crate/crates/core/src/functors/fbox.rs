//! The presented lattice freely generated by box-tokens over a lattice.
//!
//! F_box(L) is generated by one token box(a) per element a of L, subject to
//! box of a meet being the meet of the boxes. Its points are exactly the
//! filters of L: a point is a generator set S with box(meet G) in S iff all
//! of box(G) is, which forces S to be upward closed and meet closed.

use crate::bitset::subset_masks;
use crate::caps::Caps;
use crate::functors::FunctorError;
use crate::order::lattice::{filters_poset, FinDistLattice};
use crate::order::{iso, poset::FinPoset};
use crate::presented::presentation::{LatKind, Presentation, PresentedLattice, Relation};
use crate::presented::term::Term;

/// How the "for every finite subset" scheme is instantiated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionMode {
    /// One relation per subset of the index lattice (the default; follows
    /// the quantifier literally).
    FullSubsets,
    /// Only the empty and two-element instances; equivalent by term
    /// rewriting, checked as a property.
    BinaryNullary,
}

const MAX_INDEX_LATTICE: usize = 20;

/// Generator name for the box token of element `a`.
pub fn box_gen_name(l: &FinDistLattice, a: usize) -> String {
    format!("box({})", l.name(a))
}

pub fn f_box(l: &FinDistLattice, mode: ExpansionMode) -> Result<Presentation, FunctorError> {
    let n = l.len();
    if n > MAX_INDEX_LATTICE {
        return Err(FunctorError::TooLarge {
            what: "f_box index lattice".into(),
            size: n,
            max: MAX_INDEX_LATTICE,
        });
    }
    let generators: Vec<String> = (0..n).map(|a| box_gen_name(l, a)).collect();
    let mut relations = Vec::new();
    match mode {
        ExpansionMode::FullSubsets => {
            for mask in subset_masks(n) {
                let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 != 0).collect();
                let meet = l.meet_all(members.iter().copied());
                relations.push(Relation {
                    left: Term::Gen(meet),
                    right: Term::meet_of(members.iter().map(|&b| Term::Gen(b)).collect()),
                });
            }
        }
        ExpansionMode::BinaryNullary => {
            relations.push(Relation {
                left: Term::Gen(l.top()),
                right: Term::Top,
            });
            for a in 0..n {
                for b in a + 1..n {
                    relations.push(Relation {
                        left: Term::Gen(l.meet(a, b)),
                        right: Term::And(vec![Term::Gen(a), Term::Gen(b)]),
                    });
                }
            }
        }
    }
    Ok(Presentation::new(LatKind::Dl, generators, relations)?)
}

/// Builds the quotient directly.
pub fn f_box_quotient(
    l: &FinDistLattice,
    mode: ExpansionMode,
    caps: &Caps,
) -> Result<PresentedLattice, FunctorError> {
    Ok(PresentedLattice::quotient(f_box(l, mode)?, caps)?)
}

/// Outcome of checking that the dual space of F_box(L) is the filter space
/// of L under the canonical correspondence (a point, read as a set of
/// elements of L, should be a principal upset).
pub struct FboxDualityCheck {
    /// Each point matched the filter generated by this element of L.
    pub point_filters: Vec<usize>,
    /// The correspondence is an order isomorphism onto filters(L) under
    /// reverse inclusion.
    pub order_iso: bool,
}

pub fn check_fbox_duality(
    l: &FinDistLattice,
    mode: ExpansionMode,
    caps: &Caps,
) -> Result<FboxDualityCheck, FunctorError> {
    let quotient = f_box_quotient(l, mode, caps)?;
    let dual: FinPoset = quotient.dual_space();
    let fp = filters_poset(l);
    if dual.len() != l.len() {
        return Ok(FboxDualityCheck {
            point_filters: vec![],
            order_iso: false,
        });
    }
    // Identify each point with a principal filter of L.
    let mut point_filters = Vec::with_capacity(quotient.point_count());
    for p in quotient.points() {
        let members: Vec<usize> = p.iter().collect();
        let gen = (0..l.len()).find(|&c| {
            let up = l.poset().up_set(c);
            up.count() == members.len() && members.iter().all(|&m| up.contains(m))
        });
        match gen {
            Some(c) => point_filters.push(c),
            None => {
                return Ok(FboxDualityCheck {
                    point_filters: vec![],
                    order_iso: false,
                })
            }
        }
    }
    // filters_poset index i is the filter generated by element i, so the
    // correspondence is point -> its generator. Verify it is bijective and
    // an order isomorphism.
    let order_iso = iso::is_isomorphism(&dual, &fp, &point_filters);
    Ok(FboxDualityCheck {
        point_filters,
        order_iso,
    })
}
