//! Finite model spaces: structures paired with assignments on a variable
//! window.
//!
//! The window is an explicit list of variable indices, so forgetting one
//! variable keeps the names of the others; points are ordered by structure
//! and then lexicographically by assignment, and are addressable without
//! being stored.

use crate::bitset::BitSet;
use crate::fo::formula::{evaluate, FoFormula};
use crate::fo::structure::FinStructure;
use crate::fo::FoError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelPoint {
    pub structure: usize,
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ModelSpace {
    structures: Vec<FinStructure>,
    vars: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl ModelSpace {
    pub fn new_with_vars(structures: Vec<FinStructure>, vars: Vec<usize>) -> ModelSpace {
        let mut offsets = Vec::with_capacity(structures.len());
        let mut total = 0usize;
        for a in &structures {
            offsets.push(total);
            total += a.universe().pow(vars.len() as u32);
        }
        ModelSpace {
            structures,
            vars,
            offsets,
            total,
        }
    }

    /// The space of all (structure, assignment on v1..vn) pairs.
    pub fn new(structures: Vec<FinStructure>, n: usize) -> ModelSpace {
        ModelSpace::new_with_vars(structures, (1..=n).collect())
    }

    pub fn structures(&self) -> &[FinStructure] {
        &self.structures
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn point(&self, index: usize) -> ModelPoint {
        let s = match self.offsets.binary_search(&index) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let mut rest = index - self.offsets[s];
        let size = self.structures[s].universe();
        let mut assignment = vec![0; self.vars.len()];
        for k in (0..self.vars.len()).rev() {
            assignment[k] = rest % size;
            rest /= size;
        }
        ModelPoint {
            structure: s,
            assignment,
        }
    }

    pub fn index(&self, structure: usize, assignment: &[usize]) -> usize {
        let size = self.structures[structure].universe();
        let mut rest = 0;
        for &a in assignment {
            debug_assert!(a < size);
            rest = rest * size + a;
        }
        self.offsets[structure] + rest
    }

    /// Human-readable point label with 1-based universe elements.
    pub fn point_name(&self, index: usize) -> String {
        let p = self.point(index);
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(&p.assignment)
            .map(|(v, a)| format!("v{}={}", v, a + 1))
            .collect();
        format!("A{}[{}]", p.structure, parts.join(","))
    }

    /// The set of points satisfying a formula.
    pub fn semantics_set(&self, phi: &FoFormula) -> Result<BitSet, FoError> {
        if let Some(&v) = phi.free_vars().iter().find(|v| !self.vars.contains(v)) {
            return Err(FoError::UnboundVariable(v));
        }
        let mut out = BitSet::new(self.total);
        for i in 0..self.total {
            let p = self.point(i);
            if evaluate(&self.structures[p.structure], &self.vars, &p.assignment, phi)? {
                out.insert(i);
            }
        }
        Ok(out)
    }

    /// Forgets the variable `var`: returns the smaller space and the
    /// projection as a point map.
    pub fn project(&self, var: usize) -> Result<(ModelSpace, Vec<usize>), FoError> {
        let pos = self
            .vars
            .iter()
            .position(|&v| v == var)
            .ok_or(FoError::UnboundVariable(var))?;
        let vars: Vec<usize> = self
            .vars
            .iter()
            .copied()
            .filter(|&v| v != var)
            .collect();
        let target = ModelSpace::new_with_vars(self.structures.clone(), vars);
        let map = (0..self.total)
            .map(|i| {
                let mut p = self.point(i);
                p.assignment.remove(pos);
                target.index(p.structure, &p.assignment)
            })
            .collect();
        Ok((target, map))
    }

    /// The fiber of the projection forgetting `var` over a target point:
    /// all extensions of the assignment by a value for `var`.
    pub fn fiber(
        &self,
        var: usize,
        target: &ModelSpace,
        target_point: usize,
    ) -> Result<Vec<usize>, FoError> {
        let pos = self
            .vars
            .iter()
            .position(|&v| v == var)
            .ok_or(FoError::UnboundVariable(var))?;
        let p = target.point(target_point);
        let size = self.structures[p.structure].universe();
        Ok((0..size)
            .map(|a| {
                let mut assignment = p.assignment.clone();
                assignment.insert(pos, a);
                self.index(p.structure, &assignment)
            })
            .collect())
    }
}

/// Direct image of a point set along a point map.
pub fn direct_image(set: &BitSet, map: &[usize], target_len: usize) -> BitSet {
    BitSet::from_indices(target_len, set.iter().map(|i| map[i]))
}

/// Preimage of a point set along a point map.
pub fn preimage(set: &BitSet, map: &[usize]) -> BitSet {
    BitSet::from_indices(
        map.len(),
        (0..map.len()).filter(|&i| set.contains(map[i])),
    )
}
