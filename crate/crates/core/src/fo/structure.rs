//! Finite relational structures.
//!
//! Universe elements are 0-based internally and 1-based in JSON, where a
//! structure of size N has universe {1, .., N}. Relations omitted from the
//! JSON are empty; constants must all be interpreted.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::fo::signature::Signature;
use crate::fo::FoError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinStructure {
    universe: usize,
    /// One tuple set per signature relation, in signature order.
    relations: Vec<BTreeSet<Vec<usize>>>,
    /// One element per signature constant.
    constants: Vec<usize>,
}

impl FinStructure {
    pub fn new(
        sig: &Signature,
        universe: usize,
        relations: Vec<BTreeSet<Vec<usize>>>,
        constants: Vec<usize>,
    ) -> Result<Self, FoError> {
        if universe == 0 {
            return Err(FoError::BadStructure("empty universe".into()));
        }
        if relations.len() != sig.relations().len() || constants.len() != sig.constants().len() {
            return Err(FoError::BadStructure(
                "interpretation count does not match the signature".into(),
            ));
        }
        for ((name, arity), tuples) in sig.relations().iter().zip(&relations) {
            for t in tuples {
                if t.len() != *arity {
                    return Err(FoError::ArityMismatch {
                        symbol: name.clone(),
                        expected: *arity,
                        got: t.len(),
                    });
                }
                if t.iter().any(|&e| e >= universe) {
                    return Err(FoError::BadStructure(format!(
                        "tuple in {name} outside the universe"
                    )));
                }
            }
        }
        if constants.iter().any(|&e| e >= universe) {
            return Err(FoError::BadStructure("constant outside the universe".into()));
        }
        Ok(FinStructure {
            universe,
            relations,
            constants,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn relation(&self, index: usize) -> &BTreeSet<Vec<usize>> {
        &self.relations[index]
    }

    pub fn constant(&self, index: usize) -> usize {
        self.constants[index]
    }

    pub fn holds(&self, relation: usize, tuple: &[usize]) -> bool {
        self.relations[relation].contains(tuple)
    }

    pub fn to_json(&self, sig: &Signature) -> Value {
        let relations: BTreeMap<String, Vec<Vec<usize>>> = sig
            .relations()
            .iter()
            .zip(&self.relations)
            .map(|((name, _), tuples)| {
                (
                    name.clone(),
                    tuples
                        .iter()
                        .map(|t| t.iter().map(|&e| e + 1).collect())
                        .collect(),
                )
            })
            .collect();
        let constants: BTreeMap<String, usize> = sig
            .constants()
            .iter()
            .zip(&self.constants)
            .map(|(name, &e)| (name.clone(), e + 1))
            .collect();
        json!({
            "universe": self.universe,
            "relations": relations,
            "constants": constants,
        })
    }

    pub fn from_json(sig: &Signature, v: &Value) -> Result<Self, FoError> {
        let obj = v
            .as_object()
            .ok_or_else(|| FoError::Json("structure must be an object".into()))?;
        let universe = obj
            .get("universe")
            .and_then(Value::as_u64)
            .ok_or_else(|| FoError::Json("universe must be a positive integer".into()))?
            as usize;
        let mut relations = vec![BTreeSet::new(); sig.relations().len()];
        if let Some(rels) = obj.get("relations") {
            let rels = rels
                .as_object()
                .ok_or_else(|| FoError::Json("relations must be an object".into()))?;
            for (name, tuples) in rels {
                let (index, _) = sig
                    .relation(name)
                    .ok_or_else(|| FoError::UnknownSymbol(name.clone()))?;
                let tuples: Vec<Vec<u64>> = serde_json::from_value(tuples.clone())
                    .map_err(|e| FoError::Json(format!("relation {name}: {e}")))?;
                for t in tuples {
                    if t.iter().any(|&e| e == 0) {
                        return Err(FoError::Json(format!(
                            "relation {name}: elements are 1-based"
                        )));
                    }
                    relations[index].insert(t.iter().map(|&e| e as usize - 1).collect());
                }
            }
        }
        let mut constants = vec![None; sig.constants().len()];
        if let Some(cs) = obj.get("constants") {
            let cs = cs
                .as_object()
                .ok_or_else(|| FoError::Json("constants must be an object".into()))?;
            for (name, e) in cs {
                let index = sig
                    .constant(name)
                    .ok_or_else(|| FoError::UnknownSymbol(name.clone()))?;
                let e = e
                    .as_u64()
                    .filter(|&e| e >= 1)
                    .ok_or_else(|| FoError::Json(format!("constant {name}: 1-based element")))?;
                constants[index] = Some(e as usize - 1);
            }
        }
        let constants: Vec<usize> = constants
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    FoError::BadStructure(format!(
                        "constant {} not interpreted",
                        sig.constants()[i]
                    ))
                })
            })
            .collect::<Result<_, _>>()?;
        FinStructure::new(sig, universe, relations, constants)
    }

    fn relabel(&self, perm: &[usize]) -> FinStructure {
        FinStructure {
            universe: self.universe,
            relations: self
                .relations
                .iter()
                .map(|tuples| {
                    tuples
                        .iter()
                        .map(|t| t.iter().map(|&e| perm[e]).collect())
                        .collect()
                })
                .collect(),
            constants: self.constants.iter().map(|&e| perm[e]).collect(),
        }
    }

    /// The least relabelling of the structure; equal keys mean isomorphic
    /// structures. Exponential in the universe size, intended for small
    /// universes only.
    pub fn canonical_form(&self) -> FinStructure {
        let mut perm: Vec<usize> = (0..self.universe).collect();
        let mut best = self.clone();
        permute(&mut perm, 0, &mut |p| {
            let candidate = self.relabel(p);
            if candidate < best {
                best = candidate;
            }
        });
        best
    }

    pub fn is_isomorphic(&self, other: &FinStructure) -> bool {
        self.universe == other.universe && self.canonical_form() == other.canonical_form()
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(vec![("P".into(), 1), ("R".into(), 2)], vec![]).unwrap()
    }

    fn build(universe: usize, p: &[usize], r: &[(usize, usize)]) -> FinStructure {
        FinStructure::new(
            &sig(),
            universe,
            vec![
                p.iter().map(|&e| vec![e]).collect(),
                r.iter().map(|&(a, b)| vec![a, b]).collect(),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let s = sig();
        assert!(matches!(
            FinStructure::new(&s, 0, vec![BTreeSet::new(), BTreeSet::new()], vec![]),
            Err(FoError::BadStructure(_))
        ));
        assert!(matches!(
            FinStructure::new(
                &s,
                2,
                vec![[vec![0, 1]].into_iter().collect(), BTreeSet::new()],
                vec![]
            ),
            Err(FoError::ArityMismatch { .. })
        ));
        assert!(matches!(
            FinStructure::new(
                &s,
                2,
                vec![[vec![5]].into_iter().collect(), BTreeSet::new()],
                vec![]
            ),
            Err(FoError::BadStructure(_))
        ));
    }

    #[test]
    fn json_round_trip_is_one_based() {
        let s = sig();
        let a = build(2, &[0], &[(0, 1)]);
        let v = a.to_json(&s);
        assert_eq!(v["relations"]["P"], json!([[1]]));
        assert_eq!(v["relations"]["R"], json!([[1, 2]]));
        assert_eq!(FinStructure::from_json(&s, &v).unwrap(), a);
    }

    #[test]
    fn omitted_relations_are_empty() {
        let s = sig();
        let a = FinStructure::from_json(&s, &json!({"universe": 2})).unwrap();
        assert!(a.relation(0).is_empty());
        assert!(a.relation(1).is_empty());
    }

    #[test]
    fn missing_constant_rejected() {
        let s = Signature::new(vec![], vec!["c".into()]).unwrap();
        assert!(matches!(
            FinStructure::from_json(&s, &json!({"universe": 1})),
            Err(FoError::BadStructure(_))
        ));
        let a = FinStructure::from_json(&s, &json!({"universe": 2, "constants": {"c": 2}}))
            .unwrap();
        assert_eq!(a.constant(0), 1);
    }

    #[test]
    fn isomorphism_by_relabelling() {
        let a = build(2, &[0], &[(0, 1)]);
        let b = build(2, &[1], &[(1, 0)]);
        let c = build(2, &[1], &[(0, 1)]);
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }
}
