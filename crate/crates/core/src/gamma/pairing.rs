//! Model counting as a pairing between formulas and finite structures.
//!
//! The plain pairing of a formula and a structure is the fraction of
//! assignments (over a declared variable window) that satisfy it. The
//! tagged version distributes the uniform point mass over the structure's
//! assignments, pushes it forward onto the dual of a formula algebra, and
//! reads values off as exactly attained rationals; collapsing tags
//! recovers the fraction, and tagging the fraction recovers the measure
//! value.

use num_rational::Rational64;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::fo::algebra::{generated_subalgebra, SubAlgebra};
use crate::fo::formula::{evaluate, FoFormula};
use crate::fo::space::ModelSpace;
use crate::fo::structure::FinStructure;
use crate::gamma::value::{gamma_sum, GammaValue};
use crate::gamma::GammaError;

fn assignment_count(a: &FinStructure, window: usize) -> Result<i64, GammaError> {
    if a.universe() == 0 {
        return Err(GammaError::EmptyStructure);
    }
    (a.universe() as i64)
        .checked_pow(window as u32)
        .ok_or_else(|| GammaError::CapExceeded {
            what: format!("{}^{} assignments", a.universe(), window),
            cap: i64::MAX as u64,
        })
}

/// The fraction of window assignments satisfying the formula: the size of
/// the truth set over |A|^n. The window is part of the data; a formula
/// paired under a wider window is averaged over the extra coordinates.
pub fn stone_pairing(
    phi: &FoFormula,
    a: &FinStructure,
    window: usize,
) -> Result<Rational64, GammaError> {
    let total = assignment_count(a, window)?;
    let vars: Vec<usize> = (1..=window).collect();
    let mut assignment = vec![0usize; window];
    let mut count = 0i64;
    loop {
        if evaluate(a, &vars, &assignment, phi)? {
            count += 1;
        }
        let mut k = window;
        loop {
            if k == 0 {
                return Ok(Rational64::new(count, total));
            }
            k -= 1;
            assignment[k] += 1;
            if assignment[k] < a.universe() {
                break;
            }
            assignment[k] = 0;
        }
    }
}

/// A normalized finitely additive tagged-value measure on a formula
/// algebra over a model space. Determined by its values on the atoms.
pub struct GammaMeasure {
    space: ModelSpace,
    sub: SubAlgebra,
    atom_values: Vec<GammaValue>,
}

impl GammaMeasure {
    pub fn new(
        space: ModelSpace,
        sub: SubAlgebra,
        atom_values: Vec<GammaValue>,
    ) -> Result<GammaMeasure, GammaError> {
        assert_eq!(sub.blocks.len(), atom_values.len(), "one value per atom");
        assert!(
            sub.blocks.is_empty() || sub.space_len() == space.len(),
            "algebra is not over this space"
        );
        let total = gamma_sum(atom_values.iter().copied())
            .map_err(|_| GammaError::NotNormalized("atom values sum beyond 1".into()))?;
        if total != GammaValue::one() {
            return Err(GammaError::NotNormalized(format!(
                "atom values sum to {total}"
            )));
        }
        Ok(GammaMeasure {
            space,
            sub,
            atom_values,
        })
    }

    pub fn space(&self) -> &ModelSpace {
        &self.space
    }

    pub fn algebra(&self) -> &SubAlgebra {
        &self.sub
    }

    pub fn atom_values(&self) -> &[GammaValue] {
        &self.atom_values
    }

    /// The value on an algebra element: the sum over its atoms. Total
    /// within [0,1] by normalization, so the sum never fails.
    pub fn value_of_element(&self, e: usize) -> GammaValue {
        let atoms = self.sub.algebra.atoms_below(e);
        gamma_sum(atoms.iter().map(|k| self.atom_values[k]))
            .expect("partial sums of a normalized measure stay in [0,1]")
    }

    /// The value on a formula, which must carve out an extent belonging to
    /// the domain algebra.
    pub fn value_of(&self, phi: &FoFormula) -> Result<GammaValue, GammaError> {
        let extent = self.space.semantics_set(phi)?;
        let e = self
            .sub
            .element_of_extent(&extent)
            .ok_or_else(|| GammaError::FormulaNotInDomain(format!("{phi:?}")))?;
        Ok(self.value_of_element(e))
    }
}

/// The measure obtained by spreading the uniform mass of one structure
/// over the model space and pushing it onto the algebra generated by the
/// listed formulas: each atom receives (number of the structure's
/// assignments in it) / |A|^n, exactly attained.
pub fn measure_of(
    structures: &[FinStructure],
    which: usize,
    formulas: &[FoFormula],
    window: usize,
    caps: &Caps,
) -> Result<GammaMeasure, GammaError> {
    assert!(which < structures.len());
    let space = ModelSpace::new(structures.to_vec(), window);
    let mut extents = Vec::with_capacity(formulas.len());
    for phi in formulas {
        extents.push(space.semantics_set(phi)?);
    }
    let sub = generated_subalgebra(&extents, space.len(), caps)?;
    let total = assignment_count(&structures[which], window)?;
    let weight = GammaValue::up(Rational64::new(1, total)).expect("1/total is in [0,1]");
    let own: BitSet = BitSet::from_indices(
        space.len(),
        (0..space.len()).filter(|&i| space.point(i).structure == which),
    );
    let atom_values = sub
        .blocks
        .iter()
        .map(|block| {
            gamma_sum(
                block
                    .intersection(&own)
                    .iter()
                    .map(|_| weight),
            )
            .expect("at most |A|^n summands of 1/|A|^n")
        })
        .collect();
    GammaMeasure::new(space, sub, atom_values)
}

/// The tagged pairing: the plain fraction, exactly attained, computed via
/// the measure machinery over the single-structure space.
pub fn stone_pairing_gamma(
    phi: &FoFormula,
    a: &FinStructure,
    window: usize,
    caps: &Caps,
) -> Result<GammaValue, GammaError> {
    let mu = measure_of(
        std::slice::from_ref(a),
        0,
        std::slice::from_ref(phi),
        window,
        caps,
    )?;
    mu.value_of(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo::enumerate::enumerate_structures;
    use crate::fo::formula::parse_fo;
    use crate::fo::signature::Signature;
    use crate::gamma::value::{gamma_add, gamma_retract, gamma_section};

    fn caps() -> Caps {
        Caps::default()
    }

    fn sig() -> Signature {
        Signature::new(vec![("P".into(), 1)], vec![]).unwrap()
    }

    fn structure(universe: usize, p: &[usize]) -> FinStructure {
        FinStructure::new(
            &sig(),
            universe,
            vec![p.iter().map(|&e| vec![e]).collect()],
            vec![],
        )
        .unwrap()
    }

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn pairing_counts_assignments() {
        let a = structure(2, &[0]);
        let s = sig();
        let phi = parse_fo("P(v1)", &s).unwrap();
        assert_eq!(stone_pairing(&phi, &a, 1).unwrap(), r(1, 2));
        let both = parse_fo("P(v1) & P(v2)", &s).unwrap();
        assert_eq!(stone_pairing(&both, &a, 2).unwrap(), r(1, 4));
        assert_eq!(
            stone_pairing(&parse_fo("top", &s).unwrap(), &a, 2).unwrap(),
            r(1, 1)
        );
        assert_eq!(
            stone_pairing(&parse_fo("bot", &s).unwrap(), &a, 1).unwrap(),
            r(0, 1)
        );
    }

    #[test]
    fn pairing_depends_on_the_window() {
        // One of three elements satisfies P; over a width-2 window the
        // disjunction P(v1) | P(v2) is hit by 5 of 9 pairs.
        let a = structure(3, &[0]);
        let phi = parse_fo("P(v1) | P(v2)", &sig()).unwrap();
        assert_eq!(stone_pairing(&phi, &a, 2).unwrap(), r(5, 9));
        // The same formula under a wider window scales but the plain P(v1)
        // fraction is window-invariant.
        let p = parse_fo("P(v1)", &sig()).unwrap();
        assert_eq!(stone_pairing(&p, &a, 1).unwrap(), r(1, 3));
        assert_eq!(stone_pairing(&p, &a, 2).unwrap(), r(1, 3));
    }

    #[test]
    fn sentence_window_zero() {
        let a = structure(2, &[0]);
        let phi = parse_fo("exists v1. P(v1)", &sig()).unwrap();
        assert_eq!(stone_pairing(&phi, &a, 0).unwrap(), r(1, 1));
    }

    #[test]
    fn tagged_pairing_example() {
        let a = structure(2, &[0]);
        let phi = parse_fo("P(v1)", &sig()).unwrap();
        let v = stone_pairing_gamma(&phi, &a, 1, &caps()).unwrap();
        assert_eq!(v, GammaValue::up(r(1, 2)).unwrap());
        assert_eq!(v.to_string(), "1/2^");
    }

    #[test]
    fn both_triangle_legs_commute() {
        let s = sig();
        let formulas = ["P(v1)", "P(v1) & P(v2)", "P(v1) | ~P(v2)", "v1=v2", "top"];
        for universe in 1..=3usize {
            for mask in 0..(1u32 << universe) {
                let p: Vec<usize> = (0..universe).filter(|&i| mask >> i & 1 != 0).collect();
                let a = structure(universe, &p);
                for text in formulas {
                    let phi = parse_fo(text, &s).unwrap();
                    let plain = stone_pairing(&phi, &a, 2).unwrap();
                    let tagged = stone_pairing_gamma(&phi, &a, 2, &caps()).unwrap();
                    assert_eq!(gamma_retract(tagged), plain, "{text}");
                    assert_eq!(gamma_section(plain).unwrap(), tagged, "{text}");
                }
            }
        }
    }

    #[test]
    fn pairing_is_modular() {
        let a = structure(3, &[0, 2]);
        let s = sig();
        let phi = parse_fo("P(v1)", &s).unwrap();
        let psi = parse_fo("v1=v2", &s).unwrap();
        let join = FoFormula::Or(Box::new(phi.clone()), Box::new(psi.clone()));
        let meet = FoFormula::And(Box::new(phi.clone()), Box::new(psi.clone()));
        let at = |f: &FoFormula| stone_pairing(f, &a, 2).unwrap();
        assert_eq!(at(&join) + at(&meet), at(&phi) + at(&psi));
    }

    #[test]
    fn measures_are_finitely_additive() {
        let s = sig();
        let structures = enumerate_structures(&s, 2, &[], false, &caps()).unwrap();
        let formulas = vec![
            parse_fo("P(v1)", &s).unwrap(),
            parse_fo("P(v2)", &s).unwrap(),
        ];
        for which in 0..structures.len() {
            let mu = measure_of(&structures, which, &formulas, 2, &caps()).unwrap();
            let alg = &mu.algebra().algebra;
            for a in 0..alg.len() {
                for b in 0..alg.len() {
                    // Addition is partial on the unit interval; the two
                    // sides must agree as partial values.
                    let lhs = gamma_add(
                        mu.value_of_element(alg.join(a, b)),
                        mu.value_of_element(alg.meet(a, b)),
                    );
                    let rhs = gamma_add(mu.value_of_element(a), mu.value_of_element(b));
                    match (lhs, rhs) {
                        (Ok(x), Ok(y)) => assert_eq!(x, y),
                        (Err(_), Err(_)) => {}
                        (x, y) => panic!("one side overflowed: {x:?} vs {y:?}"),
                    }
                }
            }
            assert_eq!(mu.value_of_element(alg.top()), GammaValue::one());
            assert_eq!(mu.value_of_element(alg.bottom()), GammaValue::zero());
        }
    }

    #[test]
    fn measure_values_match_direct_pairing() {
        let s = sig();
        let structures = enumerate_structures(&s, 2, &[], false, &caps()).unwrap();
        let phi = parse_fo("P(v1)", &s).unwrap();
        for which in 0..structures.len() {
            let mu = measure_of(&structures, which, &[phi.clone()], 1, &caps()).unwrap();
            assert_eq!(
                gamma_retract(mu.value_of(&phi).unwrap()),
                stone_pairing(&phi, &structures[which], 1).unwrap()
            );
        }
    }

    #[test]
    fn out_of_domain_formula_rejected() {
        let s = sig();
        let structures = vec![structure(2, &[0]), structure(1, &[])];
        let phi = parse_fo("P(v1)", &s).unwrap();
        let mu = measure_of(&structures, 0, &[phi], 1, &caps()).unwrap();
        // "the universe has two distinct elements" cuts across the blocks.
        let other = parse_fo("exists v2. exists v3. ~(v2=v3)", &s).unwrap();
        assert!(matches!(
            mu.value_of(&other),
            Err(GammaError::FormulaNotInDomain(_))
        ));
    }

    #[test]
    fn unnormalized_measures_rejected() {
        let s = sig();
        let structures = vec![structure(2, &[0])];
        let phi = parse_fo("P(v1)", &s).unwrap();
        let mu = measure_of(&structures, 0, &[phi], 1, &caps()).unwrap();
        let space = mu.space().clone();
        let sub = mu.algebra().clone();
        let half = GammaValue::up(r(1, 2)).unwrap();
        let bad = GammaMeasure::new(space, sub, vec![half, GammaValue::zero()]);
        assert!(matches!(bad, Err(GammaError::NotNormalized(_))));
    }
}
