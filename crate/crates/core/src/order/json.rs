//! JSON and DOT interchange for posets.

use serde::{Deserialize, Serialize};

use crate::order::poset::FinPoset;
use crate::order::OrderError;

/// Wire form of a poset: element names plus generating pairs `[a, b]`
/// meaning `a <= b`. Reflexivity and transitivity are implied on load.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

impl PosetJson {
    pub fn to_poset(&self) -> Result<FinPoset, OrderError> {
        let mut pairs = Vec::with_capacity(self.leq.len());
        for (a, b) in &self.leq {
            let find = |name: &str| {
                self.elements
                    .iter()
                    .position(|e| e == name)
                    .ok_or_else(|| OrderError::UnknownElement(name.to_string()))
            };
            pairs.push((find(a)?, find(b)?));
        }
        FinPoset::from_pairs(self.elements.clone(), &pairs)
    }

    /// Emits cover pairs only, so the file stays close to a Hasse diagram.
    pub fn from_poset(p: &FinPoset) -> Self {
        let mut leq = Vec::new();
        for i in 0..p.len() {
            for j in p.upper_covers(i) {
                leq.push((p.name(i).to_string(), p.name(j).to_string()));
            }
        }
        PosetJson {
            elements: p.names().to_vec(),
            leq,
        }
    }
}

pub fn poset_from_json(text: &str) -> Result<FinPoset, OrderError> {
    let wire: PosetJson =
        serde_json::from_str(text).map_err(|e| OrderError::Json(e.to_string()))?;
    wire.to_poset()
}

pub fn poset_to_json(p: &FinPoset) -> String {
    serde_json::to_string_pretty(&PosetJson::from_poset(p)).expect("poset serializes")
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram in DOT, edges drawn upward from smaller to larger.
pub fn poset_to_dot(p: &FinPoset, graph_name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", dot_quote(graph_name)));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..p.len() {
        out.push_str(&format!("  {};\n", dot_quote(p.name(i))));
    }
    for i in 0..p.len() {
        for j in p.upper_covers(i) {
            out.push_str(&format!(
                "  {} -> {};\n",
                dot_quote(p.name(i)),
                dot_quote(p.name(j))
            ));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_diamond() {
        let text = r#"{
            "elements": ["0", "a", "b", "1"],
            "leq": [["0","a"], ["0","b"], ["a","1"], ["b","1"]]
        }"#;
        let p = poset_from_json(text).unwrap();
        assert!(p.leq(0, 3));
        let back = poset_from_json(&poset_to_json(&p)).unwrap();
        assert!(crate::order::iso::are_isomorphic(&p, &back));
    }

    #[test]
    fn unknown_element_rejected() {
        let text = r#"{"elements": ["a"], "leq": [["a","b"]]}"#;
        assert!(matches!(
            poset_from_json(text),
            Err(OrderError::UnknownElement(_))
        ));
    }

    #[test]
    fn cycle_rejected() {
        let text = r#"{"elements": ["a","b"], "leq": [["a","b"],["b","a"]]}"#;
        assert!(matches!(
            poset_from_json(text),
            Err(OrderError::NotAntisymmetric(_, _))
        ));
    }

    #[test]
    fn dot_contains_cover_edges_only() {
        let text = r#"{
            "elements": ["0", "m", "1"],
            "leq": [["0","m"], ["m","1"], ["0","1"]]
        }"#;
        let p = poset_from_json(text).unwrap();
        let dot = poset_to_dot(&p, "chain");
        assert!(dot.contains("\"0\" -> \"m\""));
        assert!(dot.contains("\"m\" -> \"1\""));
        assert!(!dot.contains("\"0\" -> \"1\""));
    }
}
