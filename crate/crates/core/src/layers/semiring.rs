//! Finite semirings given by operation tables.
//!
//! A semiring here is (S, +, 0, *, 1) with + a commutative monoid, * a
//! monoid, * distributing over + on both sides, and 0 absorbing for *.
//! Built-ins: the two-element Boolean semiring (1 + 1 = 1) and the cyclic
//! rings Z/q. The two differ already at q = 2: addition is idempotent in
//! the former and exclusive-or in the latter.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::layers::LayerError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiringTable {
    elements: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

#[derive(Serialize, Deserialize)]
struct SemiringJson {
    elements: Vec<String>,
    add: Vec<Vec<String>>,
    mul: Vec<Vec<String>>,
    zero: String,
    one: String,
}

impl SemiringTable {
    pub fn new(
        elements: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self, LayerError> {
        let n = elements.len();
        let bad = |msg: &str| Err(LayerError::BadSemiring(msg.into()));
        if n == 0 {
            return bad("no elements");
        }
        {
            let mut sorted = elements.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return bad("duplicate element names");
            }
        }
        let shape_ok = |t: &Vec<Vec<usize>>| {
            t.len() == n && t.iter().all(|row| row.len() == n && row.iter().all(|&v| v < n))
        };
        if !shape_ok(&add) || !shape_ok(&mul) || zero >= n || one >= n {
            return bad("table shape");
        }
        let s = SemiringTable {
            elements,
            add,
            mul,
            zero,
            one,
        };
        for a in 0..n {
            if s.add(a, s.zero) != a || s.add(s.zero, a) != a {
                return bad("0 is not an additive identity");
            }
            if s.mul(a, s.one) != a || s.mul(s.one, a) != a {
                return bad("1 is not a multiplicative identity");
            }
            if s.mul(a, s.zero) != s.zero || s.mul(s.zero, a) != s.zero {
                return bad("0 is not absorbing");
            }
            for b in 0..n {
                if s.add(a, b) != s.add(b, a) {
                    return bad("addition is not commutative");
                }
                for c in 0..n {
                    if s.add(s.add(a, b), c) != s.add(a, s.add(b, c)) {
                        return bad("addition is not associative");
                    }
                    if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)) {
                        return bad("multiplication is not associative");
                    }
                    if s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c))
                        || s.mul(s.add(a, b), c) != s.add(s.mul(a, c), s.mul(b, c))
                    {
                        return bad("multiplication does not distribute");
                    }
                }
            }
        }
        Ok(s)
    }

    /// The two-element Boolean semiring: join as addition.
    pub fn boolean() -> SemiringTable {
        SemiringTable::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        )
        .expect("boolean semiring is valid")
    }

    /// The cyclic ring Z/q for 1 <= q <= 12.
    pub fn zmod(q: usize) -> Result<SemiringTable, LayerError> {
        if q == 0 || q > 12 {
            return Err(LayerError::BadSemiring(format!(
                "Z/{q} is out of the supported range 1..=12"
            )));
        }
        let elements = (0..q).map(|i| i.to_string()).collect();
        let table = |f: fn(usize, usize) -> usize| {
            (0..q)
                .map(|a| (0..q).map(|b| f(a, b) % q).collect())
                .collect()
        };
        SemiringTable::new(elements, table(|a, b| a + b), table(|a, b| a * b), 0, 1 % q)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn sum(&self, values: impl IntoIterator<Item = usize>) -> usize {
        values.into_iter().fold(self.zero, |acc, v| self.add(acc, v))
    }

    /// 1 + .. + 1, m times; the empty sum is 0.
    pub fn nat(&self, m: usize) -> usize {
        self.sum(std::iter::repeat(self.one).take(m))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let name = |i: &usize| self.elements[*i].clone();
        serde_json::to_value(SemiringJson {
            elements: self.elements.clone(),
            add: self.add.iter().map(|r| r.iter().map(name).collect()).collect(),
            mul: self.mul.iter().map(|r| r.iter().map(name).collect()).collect(),
            zero: name(&self.zero),
            one: name(&self.one),
        })
        .expect("semiring serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, LayerError> {
        let raw: SemiringJson = serde_json::from_value(v.clone())
            .map_err(|e| LayerError::BadSemiring(format!("json: {e}")))?;
        let index: BTreeMap<&str, usize> = raw
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        let resolve = |n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| LayerError::UnknownElement(n.into()))
        };
        let table = |t: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>, LayerError> {
            t.iter()
                .map(|row| row.iter().map(|n| resolve(n)).collect())
                .collect()
        };
        SemiringTable::new(
            raw.elements.clone(),
            table(&raw.add)?,
            table(&raw.mul)?,
            resolve(&raw.zero)?,
            resolve(&raw.one)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_is_idempotent() {
        let b = SemiringTable::boolean();
        assert_eq!(b.add(1, 1), 1);
        assert_eq!(b.nat(0), 0);
        assert_eq!(b.nat(1), 1);
        assert_eq!(b.nat(5), 1);
    }

    #[test]
    fn z2_is_parity() {
        let z2 = SemiringTable::zmod(2).unwrap();
        assert_eq!(z2.add(1, 1), 0);
        assert_eq!(z2.nat(4), 0);
        assert_eq!(z2.nat(5), 1);
    }

    #[test]
    fn z3_counts_mod_three() {
        let z3 = SemiringTable::zmod(3).unwrap();
        assert_eq!(z3.nat(2), 2);
        assert_eq!(z3.nat(3), 0);
        assert_eq!(z3.mul(2, 2), 1);
    }

    #[test]
    fn degenerate_z1() {
        let z1 = SemiringTable::zmod(1).unwrap();
        assert_eq!(z1.len(), 1);
        assert_eq!(z1.zero(), z1.one());
    }

    #[test]
    fn out_of_range_modulus() {
        assert!(SemiringTable::zmod(0).is_err());
        assert!(SemiringTable::zmod(13).is_err());
    }

    #[test]
    fn axioms_checked() {
        // Non-commutative addition.
        let bad = SemiringTable::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        );
        assert!(matches!(bad, Err(LayerError::BadSemiring(_))));
    }

    #[test]
    fn json_round_trip() {
        let z4 = SemiringTable::zmod(4).unwrap();
        let back = SemiringTable::from_json(&z4.to_json()).unwrap();
        assert_eq!(z4, back);
    }
}
