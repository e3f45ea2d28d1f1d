//! Relational signatures with constants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fo::FoError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    relations: Vec<(String, usize)>,
    constants: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SignatureJson {
    #[serde(default)]
    relations: BTreeMap<String, usize>,
    #[serde(default)]
    constants: Vec<String>,
}

impl Signature {
    pub fn new(relations: Vec<(String, usize)>, constants: Vec<String>) -> Result<Self, FoError> {
        let mut seen = std::collections::HashSet::new();
        for (name, arity) in &relations {
            if *arity == 0 {
                return Err(FoError::BadArity(name.clone()));
            }
            if !seen.insert(name.clone()) {
                return Err(FoError::DuplicateSymbol(name.clone()));
            }
        }
        for name in &constants {
            if !seen.insert(name.clone()) {
                return Err(FoError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Signature {
            relations,
            constants,
        })
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    /// Index and arity of a relation symbol.
    pub fn relation(&self, name: &str) -> Option<(usize, usize)> {
        self.relations
            .iter()
            .position(|(n, _)| n == name)
            .map(|i| (i, self.relations[i].1))
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.iter().position(|n| n == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SignatureJson {
            relations: self.relations.iter().cloned().collect(),
            constants: self.constants.clone(),
        })
        .expect("signature serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, FoError> {
        let raw: SignatureJson =
            serde_json::from_value(v.clone()).map_err(|e| FoError::Json(e.to_string()))?;
        Signature::new(raw.relations.into_iter().collect(), raw.constants)
    }
}
