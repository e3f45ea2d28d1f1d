//! Formula evaluation extended with counting quantifiers.
//!
//! `exists[k] v. φ` holds at a point when the number m of witnesses for v,
//! folded as 1 + .. + 1 in the ambient semiring, equals the element named
//! k. Plain connectives and quantifiers behave as in first-order
//! evaluation; over the Boolean semiring with k = 1 the counting
//! quantifier is ordinary existence.

use crate::bitset::BitSet;
use crate::fo::formula::{FoFormula, FoTerm};
use crate::fo::space::ModelSpace;
use crate::fo::structure::FinStructure;
use crate::fo::FoError;
use crate::layers::semiring::SemiringTable;
use crate::layers::LayerError;

fn term_value(
    a: &FinStructure,
    env: &[(usize, usize)],
    t: &FoTerm,
) -> Result<usize, LayerError> {
    match t {
        FoTerm::Var(v) => env
            .iter()
            .rev()
            .find(|(u, _)| u == v)
            .map(|&(_, x)| x)
            .ok_or(LayerError::IndexOutOfWindow(*v)),
        FoTerm::Const(c) => Ok(a.constant(*c)),
    }
}

fn eval(
    a: &FinStructure,
    env: &mut Vec<(usize, usize)>,
    phi: &FoFormula,
    s: &SemiringTable,
) -> Result<bool, LayerError> {
    Ok(match phi {
        FoFormula::Bot => false,
        FoFormula::Top => true,
        FoFormula::Atom(r, ts) => {
            let mut tuple = Vec::with_capacity(ts.len());
            for t in ts {
                tuple.push(term_value(a, env, t)?);
            }
            a.holds(*r, &tuple)
        }
        FoFormula::Eq(l, r) => term_value(a, env, l)? == term_value(a, env, r)?,
        FoFormula::Not(p) => !eval(a, env, p, s)?,
        FoFormula::And(l, r) => eval(a, env, l, s)? && eval(a, env, r, s)?,
        FoFormula::Or(l, r) => eval(a, env, l, s)? || eval(a, env, r, s)?,
        FoFormula::Imp(l, r) => !eval(a, env, l, s)? || eval(a, env, r, s)?,
        FoFormula::Exists(v, body) => {
            let mut found = false;
            for x in 0..a.universe() {
                env.push((*v, x));
                found = eval(a, env, body, s)?;
                env.pop();
                if found {
                    break;
                }
            }
            found
        }
        FoFormula::Forall(v, body) => {
            let mut all = true;
            for x in 0..a.universe() {
                env.push((*v, x));
                all = eval(a, env, body, s)?;
                env.pop();
                if !all {
                    break;
                }
            }
            all
        }
        FoFormula::ExistsK(kname, v, body) => {
            let k = s
                .index(kname)
                .ok_or_else(|| LayerError::UnknownElement(kname.clone()))?;
            let mut m = 0usize;
            for x in 0..a.universe() {
                env.push((*v, x));
                let holds = eval(a, env, body, s)?;
                env.pop();
                if holds {
                    m += 1;
                }
            }
            s.nat(m) == k
        }
    })
}

/// Evaluates a formula, counting quantifiers included, at one assignment.
pub fn semiring_evaluate(
    a: &FinStructure,
    vars: &[usize],
    assignment: &[usize],
    phi: &FoFormula,
    s: &SemiringTable,
) -> Result<bool, LayerError> {
    assert_eq!(vars.len(), assignment.len());
    let mut env: Vec<(usize, usize)> = vars.iter().copied().zip(assignment.iter().copied()).collect();
    eval(a, &mut env, phi, s)
}

/// The set of model-space points satisfying a formula with counting
/// quantifiers.
pub fn semiring_semantics_set(
    space: &ModelSpace,
    phi: &FoFormula,
    s: &SemiringTable,
) -> Result<BitSet, LayerError> {
    if let Some(&v) = phi.free_vars().iter().find(|v| !space.vars().contains(v)) {
        return Err(FoError::UnboundVariable(v).into());
    }
    let mut out = BitSet::new(space.len());
    for i in 0..space.len() {
        let p = space.point(i);
        let a = &space.structures()[p.structure];
        if semiring_evaluate(a, space.vars(), &p.assignment, phi, s)? {
            out.insert(i);
        }
    }
    Ok(out)
}
