//! Presented function-space lattices.
//!
//! F_arrow(L, M) is generated by tokens a->b for a in L, b in M, with the
//! meet scheme in the second argument and the join-to-meet scheme in the
//! first. Points correspond to monotone maps from the dual of L into the
//! Smyth hyperspace of the dual of M: the row of a point at a is a filter
//! of M, rows reverse joins.
//!
//! Adding the join scheme at join-irreducible first arguments cuts the
//! points down to monotone maps between the duals themselves.

use crate::bitset::{subset_masks, BitSet};
use crate::functors::FunctorError;
use crate::order::lattice::FinDistLattice;
use crate::presented::presentation::{LatKind, Presentation, PresentedLattice, Relation};
use crate::presented::term::Term;

const MAX_SIDE: usize = 10;

/// An arrow presentation remembers its row and column layout: generator
/// index = row * columns + column, rows running over L in a linear
/// extension and columns over M in a linear extension.
pub struct ArrowPresentation {
    pub presentation: Presentation,
    /// L element index of each row.
    pub rows: Vec<usize>,
    /// M element index of each column.
    pub cols: Vec<usize>,
    /// Row position of each L element (inverse of `rows`).
    pub row_of: Vec<usize>,
    /// Column position of each M element.
    pub col_of: Vec<usize>,
}

impl ArrowPresentation {
    pub fn gen_index(&self, a: usize, b: usize) -> usize {
        self.row_of[a] * self.cols.len() + self.col_of[b]
    }

    /// The generator token a->b as a term.
    pub fn arrow(&self, a: usize, b: usize) -> Term {
        Term::Gen(self.gen_index(a, b))
    }

    /// Reads a point as rows: for each L element, the set of M elements b
    /// with a->b in the point.
    pub fn point_rows(&self, m_len: usize, point: &BitSet) -> Vec<BitSet> {
        let cols = self.cols.len();
        self.row_of
            .iter()
            .map(|&r| {
                BitSet::from_indices(
                    m_len,
                    (0..cols)
                        .filter(|&c| point.contains(r * cols + c))
                        .map(|c| self.cols[c]),
                )
            })
            .collect()
    }
}

fn layout(l: &FinDistLattice, m: &FinDistLattice) -> Result<ArrowPresentation, FunctorError> {
    if l.len() > MAX_SIDE || m.len() > MAX_SIDE {
        return Err(FunctorError::TooLarge {
            what: "f_arrow index lattices".into(),
            size: l.len().max(m.len()),
            max: MAX_SIDE,
        });
    }
    let rows = l.poset().linear_extension();
    let cols = m.poset().linear_extension();
    let mut row_of = vec![0; l.len()];
    for (pos, &a) in rows.iter().enumerate() {
        row_of[a] = pos;
    }
    let mut col_of = vec![0; m.len()];
    for (pos, &b) in cols.iter().enumerate() {
        col_of[b] = pos;
    }
    let generators = rows
        .iter()
        .flat_map(|&a| {
            cols.iter()
                .map(move |&b| (a, b))
        })
        .map(|(a, b)| format!("({}->{})", l.name(a), m.name(b)))
        .collect();
    let presentation = Presentation::new(LatKind::Dl, generators, vec![])?;
    Ok(ArrowPresentation {
        presentation,
        rows,
        cols,
        row_of,
        col_of,
    })
}

fn meet_scheme(ap: &ArrowPresentation, l: &FinDistLattice, m: &FinDistLattice) -> Vec<Relation> {
    // a -> meet(G) = meet of a -> b over b in G, for every finite G.
    let mut out = Vec::new();
    for a in 0..l.len() {
        for mask in subset_masks(m.len()) {
            let members: Vec<usize> = (0..m.len()).filter(|&i| mask >> i & 1 != 0).collect();
            let meet = m.meet_all(members.iter().copied());
            out.push(Relation {
                left: ap.arrow(a, meet),
                right: Term::meet_of(members.iter().map(|&b| ap.arrow(a, b)).collect()),
            });
        }
    }
    out
}

fn join_to_meet_scheme(
    ap: &ArrowPresentation,
    l: &FinDistLattice,
    m: &FinDistLattice,
) -> Vec<Relation> {
    // join(F) -> b = meet of a -> b over a in F, for every finite F.
    let mut out = Vec::new();
    for mask in subset_masks(l.len()) {
        let members: Vec<usize> = (0..l.len()).filter(|&i| mask >> i & 1 != 0).collect();
        let join = l.join_all(members.iter().copied());
        for b in 0..m.len() {
            out.push(Relation {
                left: ap.arrow(join, b),
                right: Term::meet_of(members.iter().map(|&a| ap.arrow(a, b)).collect()),
            });
        }
    }
    out
}

fn join_at_primes_scheme(
    ap: &ArrowPresentation,
    l: &FinDistLattice,
    m: &FinDistLattice,
) -> Vec<Relation> {
    // p -> join(G) = join of p -> b over b in G, at join-irreducible p.
    let mut out = Vec::new();
    for p in l.join_irreducible_indices() {
        for mask in subset_masks(m.len()) {
            let members: Vec<usize> = (0..m.len()).filter(|&i| mask >> i & 1 != 0).collect();
            let join = m.join_all(members.iter().copied());
            out.push(Relation {
                left: ap.arrow(p, join),
                right: Term::join_of(members.iter().map(|&b| ap.arrow(p, b)).collect()),
            });
        }
    }
    out
}

pub fn f_arrow(l: &FinDistLattice, m: &FinDistLattice) -> Result<ArrowPresentation, FunctorError> {
    let mut ap = layout(l, m)?;
    let mut relations = meet_scheme(&ap, l, m);
    relations.extend(join_to_meet_scheme(&ap, l, m));
    ap.presentation = Presentation::new(
        LatKind::Dl,
        ap.presentation.generators.clone(),
        relations,
    )?;
    Ok(ap)
}

pub fn f_arrow_at_primes(
    l: &FinDistLattice,
    m: &FinDistLattice,
) -> Result<ArrowPresentation, FunctorError> {
    let mut ap = layout(l, m)?;
    let mut relations = meet_scheme(&ap, l, m);
    relations.extend(join_to_meet_scheme(&ap, l, m));
    relations.extend(join_at_primes_scheme(&ap, l, m));
    ap.presentation = Presentation::new(
        LatKind::Dl,
        ap.presentation.generators.clone(),
        relations,
    )?;
    Ok(ap)
}

/// Reads a point of f_arrow as a map from join-irreducibles of L to
/// filters of M (by filter generator). Returns `None` when some row fails
/// to be a filter, which would refute the duality.
pub fn point_as_filter_map(
    ap: &ArrowPresentation,
    l: &FinDistLattice,
    m: &FinDistLattice,
    point: &BitSet,
) -> Option<Vec<usize>> {
    let rows = ap.point_rows(m.len(), point);
    l.join_irreducible_indices()
        .iter()
        .map(|&p| {
            let row = &rows[p];
            let c = m.meet_all(row.iter());
            (m.poset().up_set(c) == row).then_some(c)
        })
        .collect()
}

/// Reads a point of f_arrow_at_primes as a map from join-irreducibles of L
/// to join-irreducibles of M (by position in the join-irreducible list).
pub fn point_as_ji_map(
    ap: &ArrowPresentation,
    l: &FinDistLattice,
    m: &FinDistLattice,
    point: &BitSet,
) -> Option<Vec<usize>> {
    let ji_m = m.join_irreducible_indices();
    point_as_filter_map(ap, l, m, point)?
        .into_iter()
        .map(|c| ji_m.iter().position(|&q| q == c))
        .collect()
}

/// Whether a quotient of an f_arrow presentation sends joins taken at
/// join-irreducible first arguments to joins: for every join-irreducible p,
/// every a above p and every finite G, some a' above p has
/// [a -> join(G)] below [join of a' -> b].
pub fn joins_at_primes(
    quotient: &PresentedLattice,
    ap: &ArrowPresentation,
    l: &FinDistLattice,
    m: &FinDistLattice,
) -> Result<bool, FunctorError> {
    for p in l.join_irreducible_indices() {
        let above_p: Vec<usize> = l.poset().up_set(p).iter().collect();
        for &a in &above_p {
            for mask in subset_masks(m.len()) {
                let members: Vec<usize> =
                    (0..m.len()).filter(|&i| mask >> i & 1 != 0).collect();
                let join = m.join_all(members.iter().copied());
                let lhs = quotient.element(ap.arrow(a, join))?;
                let mut witnessed = false;
                for &a2 in &above_p {
                    let rhs = quotient.element(Term::join_of(
                        members.iter().map(|&b| ap.arrow(a2, b)).collect(),
                    ))?;
                    if quotient.leq(&lhs, &rhs)? {
                        witnessed = true;
                        break;
                    }
                }
                if !witnessed {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
