//! Lattice terms over named generators.

use serde_json::Value;

use crate::bitset::BitSet;
use crate::presented::PresentError;

/// A term in the language of bounded lattices, with negation allowed only
/// in Boolean presentations. Meets and joins are n-ary; the empty meet is
/// `Top` and the empty join is `Bot`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Top,
    Bot,
    Gen(usize),
    Not(Box<Term>),
    And(Vec<Term>),
    Or(Vec<Term>),
}

impl Term {
    /// Truth value under the valuation that makes exactly the generators in
    /// `point` true.
    pub fn eval(&self, point: &BitSet) -> bool {
        match self {
            Term::Top => true,
            Term::Bot => false,
            Term::Gen(g) => point.contains(*g),
            Term::Not(t) => !t.eval(point),
            Term::And(ts) => ts.iter().all(|t| t.eval(point)),
            Term::Or(ts) => ts.iter().any(|t| t.eval(point)),
        }
    }

    /// Largest generator index occurring, if any.
    pub fn max_gen(&self) -> Option<usize> {
        match self {
            Term::Top | Term::Bot => None,
            Term::Gen(g) => Some(*g),
            Term::Not(t) => t.max_gen(),
            Term::And(ts) | Term::Or(ts) => ts.iter().filter_map(|t| t.max_gen()).max(),
        }
    }

    pub fn contains_not(&self) -> bool {
        match self {
            Term::Top | Term::Bot | Term::Gen(_) => false,
            Term::Not(_) => true,
            Term::And(ts) | Term::Or(ts) => ts.iter().any(|t| t.contains_not()),
        }
    }

    /// N-ary meet, collapsing the empty and unary cases.
    pub fn meet_of(mut items: Vec<Term>) -> Term {
        match items.len() {
            0 => Term::Top,
            1 => items.pop().unwrap(),
            _ => Term::And(items),
        }
    }

    /// N-ary join, collapsing the empty and unary cases.
    pub fn join_of(mut items: Vec<Term>) -> Term {
        match items.len() {
            0 => Term::Bot,
            1 => items.pop().unwrap(),
            _ => Term::Or(items),
        }
    }

    pub fn check_gens(&self, count: usize) -> Result<(), PresentError> {
        match self.max_gen() {
            Some(g) if g >= count => Err(PresentError::BadTerm(format!(
                "generator index {} out of range {}",
                g, count
            ))),
            _ => Ok(()),
        }
    }

    /// The nested-array wire form: `["and", ..]`, `["or", ..]`, `["not", t]`,
    /// `["gen", name]`, `["top"]`, `["bot"]`.
    pub fn to_json(&self, names: &[String]) -> Value {
        match self {
            Term::Top => Value::Array(vec!["top".into()]),
            Term::Bot => Value::Array(vec!["bot".into()]),
            Term::Gen(g) => Value::Array(vec!["gen".into(), names[*g].clone().into()]),
            Term::Not(t) => Value::Array(vec!["not".into(), t.to_json(names)]),
            Term::And(ts) => {
                let mut arr: Vec<Value> = vec!["and".into()];
                arr.extend(ts.iter().map(|t| t.to_json(names)));
                Value::Array(arr)
            }
            Term::Or(ts) => {
                let mut arr: Vec<Value> = vec!["or".into()];
                arr.extend(ts.iter().map(|t| t.to_json(names)));
                Value::Array(arr)
            }
        }
    }

    pub fn from_json(v: &Value, names: &[String]) -> Result<Term, PresentError> {
        let arr = v
            .as_array()
            .ok_or_else(|| PresentError::BadTerm(format!("term must be an array, got {}", v)))?;
        let head = arr
            .first()
            .and_then(|h| h.as_str())
            .ok_or_else(|| PresentError::BadTerm("term head must be a string".into()))?;
        let rest = &arr[1..];
        let sub = |vals: &[Value]| -> Result<Vec<Term>, PresentError> {
            vals.iter().map(|t| Term::from_json(t, names)).collect()
        };
        match head {
            "top" if rest.is_empty() => Ok(Term::Top),
            "bot" if rest.is_empty() => Ok(Term::Bot),
            "gen" => {
                let name = rest
                    .first()
                    .and_then(|n| n.as_str())
                    .ok_or_else(|| PresentError::BadTerm("gen needs a name".into()))?;
                let idx = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| PresentError::UnknownGenerator(name.to_string()))?;
                Ok(Term::Gen(idx))
            }
            "not" if rest.len() == 1 => {
                Ok(Term::Not(Box::new(Term::from_json(&rest[0], names)?)))
            }
            "and" => Ok(Term::meet_of(sub(rest)?)),
            "or" => Ok(Term::join_of(sub(rest)?)),
            other => Err(PresentError::BadTerm(format!(
                "unknown term head {:?}",
                other
            ))),
        }
    }

    /// Readable rendering with generator names.
    pub fn display(&self, names: &[String]) -> String {
        match self {
            Term::Top => "1".to_string(),
            Term::Bot => "0".to_string(),
            Term::Gen(g) => names[*g].clone(),
            Term::Not(t) => format!("~{}", t.display_atomic(names)),
            Term::And(ts) => ts
                .iter()
                .map(|t| t.display_atomic(names))
                .collect::<Vec<_>>()
                .join(" /\\ "),
            Term::Or(ts) => ts
                .iter()
                .map(|t| t.display_atomic(names))
                .collect::<Vec<_>>()
                .join(" \\/ "),
        }
    }

    fn display_atomic(&self, names: &[String]) -> String {
        match self {
            Term::And(ts) | Term::Or(ts) if ts.len() > 1 => format!("({})", self.display(names)),
            _ => self.display(names),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn eval_basic() {
        let t = Term::And(vec![Term::Gen(0), Term::Or(vec![Term::Gen(1), Term::Gen(2)])]);
        let p = BitSet::from_indices(3, [0, 2]);
        assert!(t.eval(&p));
        let q = BitSet::from_indices(3, [0]);
        assert!(!t.eval(&q));
    }

    #[test]
    fn empty_meet_and_join() {
        let p = BitSet::new(3);
        assert!(Term::meet_of(vec![]).eval(&p));
        assert!(!Term::join_of(vec![]).eval(&p));
        assert_eq!(Term::meet_of(vec![Term::Gen(1)]), Term::Gen(1));
    }

    #[test]
    fn json_round_trip() {
        let ns = names();
        let t = Term::Or(vec![
            Term::Not(Box::new(Term::Gen(0))),
            Term::And(vec![Term::Gen(1), Term::Top]),
        ]);
        let v = t.to_json(&ns);
        let back = Term::from_json(&v, &ns).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn json_parse_concrete() {
        let ns = names();
        let v: Value =
            serde_json::from_str(r#"["and", ["gen","x"], ["not", ["gen","y"]], ["top"]]"#).unwrap();
        let t = Term::from_json(&v, &ns).unwrap();
        assert!(t.eval(&BitSet::from_indices(3, [0])));
        assert!(!t.eval(&BitSet::from_indices(3, [0, 1])));
    }

    #[test]
    fn bad_json_rejected() {
        let ns = names();
        let v: Value = serde_json::from_str(r#"["gen","w"]"#).unwrap();
        assert!(matches!(
            Term::from_json(&v, &ns),
            Err(PresentError::UnknownGenerator(_))
        ));
        let v: Value = serde_json::from_str(r#"["xor", ["top"]]"#).unwrap();
        assert!(matches!(
            Term::from_json(&v, &ns),
            Err(PresentError::BadTerm(_))
        ));
    }

    #[test]
    fn display_readable() {
        let ns = names();
        let t = Term::And(vec![Term::Gen(0), Term::Or(vec![Term::Gen(1), Term::Gen(2)])]);
        assert_eq!(t.display(&ns), "x /\\ (y \\/ z)");
    }
}
