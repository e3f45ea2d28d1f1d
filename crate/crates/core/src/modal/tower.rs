//! The step-wise free modal algebra over a finite variable set, carried
//! entirely on the dual side.
//!
//! Level zero is the free Boolean algebra on the variables; its points are
//! the variable valuations. Each next point space is X_0 x P(X_n): a point
//! is a valuation together with a set of points one level down. The algebra
//! B_n is the full powerset of X_n and is never materialized; elements are
//! point sets. The embeddings B_n -> B_{n+1} are preimages of the
//! projections X_{n+1} -> X_n, and the diamond of an element a of B_n is
//! the set of points whose second component meets a.

use num_bigint::BigUint;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::modal::formula::ModalFormula;
use crate::modal::ModalError;

#[derive(Debug)]
pub struct ModalTower {
    variables: Vec<String>,
    /// |X_0| .. |X_depth|.
    sizes: Vec<usize>,
}

impl ModalTower {
    pub fn build(variables: Vec<String>, depth: usize, caps: &Caps) -> Result<Self, ModalError> {
        let mut seen = std::collections::HashSet::new();
        for v in &variables {
            if !seen.insert(v.clone()) {
                return Err(ModalError::DuplicateVariable(v.clone()));
            }
        }
        let base = BigUint::from(1u32) << variables.len();
        let mut big_sizes = vec![base.clone()];
        let mut sizes = Vec::new();
        for level in 0..=depth {
            if level > 0 {
                let prev = sizes[level - 1];
                big_sizes.push(base.clone() << prev);
            }
            let size = &big_sizes[level];
            if *size > BigUint::from(caps.max_points) {
                return Err(ModalError::CapExceeded {
                    level,
                    size: size.clone(),
                    cap: caps.max_points,
                });
            }
            let mut digits = size.iter_u64_digits();
            sizes.push(digits.next().unwrap_or(0) as usize);
        }
        Ok(ModalTower { variables, sizes })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn depth(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn x_size(&self, level: usize) -> usize {
        self.sizes[level]
    }

    /// |B_level| = 2^|X_level|.
    pub fn b_size(&self, level: usize) -> BigUint {
        BigUint::from(1u32) << self.sizes[level]
    }

    /// The valuation component of a point: a bitmask over the variables.
    pub fn point_valuation(&self, level: usize, point: usize) -> u64 {
        if level == 0 {
            point as u64
        } else {
            (point >> self.sizes[level - 1]) as u64
        }
    }

    /// The second component of a point at level >= 1: a bitmask over the
    /// points of the previous level.
    pub fn point_children(&self, level: usize, point: usize) -> u64 {
        assert!(level >= 1);
        (point & ((1usize << self.sizes[level - 1]) - 1)) as u64
    }

    fn point_from_parts(&self, level: usize, valuation: u64, children: u64) -> usize {
        ((valuation as usize) << self.sizes[level - 1]) | children as usize
    }

    /// The projection X_level -> X_{level-1}: keep the valuation, push the
    /// children down pointwise.
    pub fn project(&self, level: usize, point: usize) -> usize {
        assert!(level >= 1);
        if level == 1 {
            return self.point_valuation(1, point) as usize;
        }
        let children = self.point_children(level, point);
        let mut below = 0u64;
        for y in 0..self.sizes[level - 1] {
            if children >> y & 1 != 0 {
                below |= 1 << self.project(level - 1, y);
            }
        }
        self.point_from_parts(level - 1, self.point_valuation(level, point), below)
    }

    /// The embedding B_{level} -> B_{level+1}: preimage of the projection.
    pub fn embed(&self, level: usize, a: &BitSet) -> BitSet {
        assert_eq!(a.len(), self.sizes[level]);
        BitSet::from_indices(
            self.sizes[level + 1],
            (0..self.sizes[level + 1]).filter(|&p| a.contains(self.project(level + 1, p))),
        )
    }

    /// The diamond operation B_level -> B_{level+1}: the points whose
    /// children meet `a`.
    pub fn diamond(&self, level: usize, a: &BitSet) -> BitSet {
        assert_eq!(a.len(), self.sizes[level]);
        let mask = a.as_mask();
        BitSet::from_indices(
            self.sizes[level + 1],
            (0..self.sizes[level + 1]).filter(|&p| self.point_children(level + 1, p) & mask != 0),
        )
    }

    fn var_index(&self, name: &str) -> Result<usize, ModalError> {
        self.variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ModalError::UnknownVariable(name.into()))
    }

    /// Evaluates a formula as an element of B_level; requires
    /// rank(phi) <= level <= depth.
    pub fn interpret_at(&self, phi: &ModalFormula, level: usize) -> Result<BitSet, ModalError> {
        if level > self.depth() || phi.rank() > level {
            return Err(ModalError::DepthExceeded {
                rank: phi.rank().max(level),
                depth: self.depth(),
            });
        }
        let n = self.sizes[level];
        match phi {
            ModalFormula::Bot => Ok(BitSet::new(n)),
            ModalFormula::Top => Ok(BitSet::full(n)),
            ModalFormula::Var(v) => {
                let i = self.var_index(v)?;
                Ok(BitSet::from_indices(
                    n,
                    (0..n).filter(|&p| self.point_valuation(level, p) >> i & 1 != 0),
                ))
            }
            ModalFormula::Not(a) => Ok(self.interpret_at(a, level)?.complement()),
            ModalFormula::And(a, b) => {
                Ok(self.interpret_at(a, level)?.intersection(&self.interpret_at(b, level)?))
            }
            ModalFormula::Or(a, b) => {
                Ok(self.interpret_at(a, level)?.union(&self.interpret_at(b, level)?))
            }
            ModalFormula::Dia(a) => {
                let inner = self.interpret_at(a, level - 1)?;
                Ok(self.diamond(level - 1, &inner))
            }
        }
    }

    /// Evaluates a formula at its own rank.
    pub fn interpret(&self, phi: &ModalFormula) -> Result<(BitSet, usize), ModalError> {
        let level = phi.rank();
        Ok((self.interpret_at(phi, level)?, level))
    }

    /// Equality in the free modal algebra at the smallest common rank.
    pub fn equivalent_at_rank(
        &self,
        phi: &ModalFormula,
        psi: &ModalFormula,
    ) -> Result<bool, ModalError> {
        let level = phi.rank().max(psi.rank());
        Ok(self.interpret_at(phi, level)? == self.interpret_at(psi, level)?)
    }
}

/// The level sizes |X_0..X_depth| predicted by the recurrence
/// |X_{n+1}| = |X_0| * 2^|X_n|, computed without any cap.
///
/// Panics if an intermediate exponent exceeds 2^26 bits, at which point the
/// number is too large to be worth writing down.
pub fn predicted_sizes(vars: usize, depth: usize) -> Vec<BigUint> {
    let base = BigUint::from(1u32) << vars;
    let mut out = vec![base.clone()];
    for _ in 0..depth {
        let prev = out.last().unwrap();
        let exp = usize::try_from(prev).ok().filter(|&e| e <= 1 << 26);
        let exp = exp.expect("level size exponent too large");
        out.push(base.clone() << exp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::formula::parse_modal;
    use crate::presented::presentation::{LatKind, Presentation, Relation};
    use crate::presented::term::Term;

    fn tower(vars: &[&str], depth: usize) -> ModalTower {
        ModalTower::build(
            vars.iter().map(|s| s.to_string()).collect(),
            depth,
            &Caps::default(),
        )
        .unwrap()
    }

    #[test]
    fn zero_variable_sizes() {
        let t = tower(&[], 3);
        assert_eq!(
            (0..=3).map(|n| t.x_size(n)).collect::<Vec<_>>(),
            vec![1, 2, 4, 16]
        );
        assert_eq!(t.b_size(3), BigUint::from(1u32) << 16);
    }

    #[test]
    fn one_variable_sizes() {
        let t = tower(&["p"], 2);
        assert_eq!(
            (0..=2).map(|n| t.x_size(n)).collect::<Vec<_>>(),
            vec![2, 8, 512]
        );
    }

    #[test]
    fn depth_zero_is_free_boolean_algebra() {
        let t = tower(&["p", "q"], 0);
        assert_eq!(t.x_size(0), 4);
        assert_eq!(t.b_size(0), BigUint::from(16u32));
    }

    #[test]
    fn cap_exceeded_names_level() {
        let err = ModalTower::build(vec!["p".into()], 3, &Caps::default()).unwrap_err();
        match err {
            ModalError::CapExceeded { level, .. } => assert_eq!(level, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn recurrence_matches_prediction() {
        let t = tower(&["p"], 2);
        let predicted = predicted_sizes(1, 2);
        for n in 0..=2 {
            assert_eq!(BigUint::from(t.x_size(n)), predicted[n]);
        }
    }

    #[test]
    fn diamond_bot_is_empty() {
        let t = tower(&[], 3);
        let phi = parse_modal("dia bot").unwrap();
        for level in 1..=3 {
            assert_eq!(t.interpret_at(&phi, level).unwrap().count(), 0);
        }
    }

    #[test]
    fn diamond_top_at_level_one() {
        let t = tower(&[], 1);
        let (sat, level) = t.interpret(&parse_modal("dia top").unwrap()).unwrap();
        assert_eq!(level, 1);
        // Two points: children empty or not; exactly the nonempty one.
        assert_eq!(t.x_size(1), 2);
        assert_eq!(sat.to_vec(), vec![1]);
    }

    #[test]
    fn variable_at_level_zero() {
        let t = tower(&["p"], 0);
        let (sat, level) = t.interpret(&parse_modal("p").unwrap()).unwrap();
        assert_eq!(level, 0);
        assert_eq!(sat.to_vec(), vec![1]);
    }

    #[test]
    fn unknown_variable_rejected() {
        let t = tower(&["p"], 1);
        assert!(matches!(
            t.interpret(&parse_modal("q").unwrap()),
            Err(ModalError::UnknownVariable(_))
        ));
    }

    #[test]
    fn rank_above_depth_rejected() {
        let t = tower(&["p"], 1);
        assert!(matches!(
            t.interpret(&parse_modal("dia dia p").unwrap()),
            Err(ModalError::DepthExceeded { .. })
        ));
    }

    #[test]
    fn idempotent_join_under_diamond() {
        let t = tower(&["p"], 2);
        let a = parse_modal("dia(p | p)").unwrap();
        let b = parse_modal("dia p").unwrap();
        assert!(t.equivalent_at_rank(&a, &b).unwrap());
    }

    #[test]
    fn diamond_distributes_over_join() {
        let t = tower(&["p", "q"], 1);
        let a = parse_modal("dia(p | q)").unwrap();
        let b = parse_modal("dia p | dia q").unwrap();
        assert!(t.equivalent_at_rank(&a, &b).unwrap());
    }

    #[test]
    fn no_transitivity_in_the_free_algebra() {
        let t = tower(&["p"], 2);
        let a = parse_modal("dia dia p").unwrap();
        let b = parse_modal("dia p").unwrap();
        assert!(!t.equivalent_at_rank(&a, &b).unwrap());
    }

    #[test]
    fn embedding_compatibility() {
        // Interpreting a low-rank formula at a higher level agrees with
        // embedding its interpretation along the projections.
        let t = tower(&["p"], 2);
        for text in ["p", "~p", "dia p", "dia top", "p & dia p", "p -> dia p"] {
            let phi = parse_modal(text).unwrap();
            let (at_rank, level) = t.interpret(&phi).unwrap();
            let mut lifted = at_rank;
            for n in level..2 {
                lifted = t.embed(n, &lifted);
            }
            assert_eq!(lifted, t.interpret_at(&phi, 2).unwrap(), "formula {text}");
        }
    }

    #[test]
    fn rank_one_equations_hold_at_every_level() {
        // Diamond as an operation B_n -> B_{n+1} kills bottom and
        // distributes over joins, for every element pair, at every level
        // the tower materializes.
        for (vars, depth) in [(vec![], 3usize), (vec!["p".to_string()], 2)] {
            let t = ModalTower::build(vars, depth, &Caps::default()).unwrap();
            for n in 0..t.depth() {
                let size = t.x_size(n);
                if size > 10 {
                    continue;
                }
                assert_eq!(t.diamond(n, &BitSet::new(size)).count(), 0);
                for ma in 0..1u64 << size {
                    for mb in 0..1u64 << size {
                        let a = BitSet::from_mask(size, ma);
                        let b = BitSet::from_mask(size, mb);
                        let lhs = t.diamond(n, &a.union(&b));
                        let rhs = t.diamond(n, &a).union(&t.diamond(n, &b));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn more_variables_strictly_larger() {
        for depth in 0..=2 {
            for vars in 0..3 {
                let smaller = predicted_sizes(vars, depth);
                let larger = predicted_sizes(vars + 1, depth);
                for n in 0..=depth {
                    assert!(smaller[n] < larger[n]);
                }
            }
        }
    }

    /// The one-step algebra as a Boolean presentation: the previous level's
    /// elements become diamond generators subject to the join equations.
    fn step_presentation(vars: usize, prev_size: usize) -> Presentation {
        let mut generators: Vec<String> = (0..vars).map(|i| format!("v{i}")).collect();
        let dia_base = generators.len();
        generators.extend((0..1u64 << prev_size).map(|m| format!("dia{m}")));
        let dia = |m: u64| Term::Gen(dia_base + m as usize);
        let mut relations = vec![Relation {
            left: dia(0),
            right: Term::Bot,
        }];
        for ma in 0..1u64 << prev_size {
            for mb in ma..1u64 << prev_size {
                relations.push(Relation {
                    left: dia(ma | mb),
                    right: Term::Or(vec![dia(ma), dia(mb)]),
                });
            }
        }
        Presentation::new(LatKind::Ba, generators, relations).unwrap()
    }

    #[test]
    fn presented_algebra_oracle_for_early_levels() {
        use crate::presented::presentation::PresentedLattice;
        let caps = Caps::default();
        // (vars, level) pairs small enough to quotient directly.
        let zero = tower(&[], 2);
        let one = tower(&["p"], 1);
        for (t, vars, level) in [(&zero, 0usize, 1usize), (&zero, 0, 2), (&one, 1, 1)] {
            let pres = step_presentation(vars, t.x_size(level - 1));
            let q = PresentedLattice::quotient(pres, &caps).unwrap();
            assert_eq!(q.point_count(), t.x_size(level), "vars {vars} level {level}");
        }
    }
}
