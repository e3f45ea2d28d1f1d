//! Tagged rationals: the double-arrow interval at its rational points.
//!
//! A value q is tagged UP when it is exactly attained ("q^") and DOWN when
//! it is approached strictly from below without being reached ("qv"). The
//! order interleaves the two copies: qv sits immediately below q^, and
//! values with different rationals compare by the rationals alone. Only
//! rational points are ever materialized; the inverse-limit presentation
//! survives as the approximation and flooring functions.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::gamma::GammaError;

/// DOWN sorts strictly below UP at the same rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Down,
    Up,
}

/// Field order matters: deriving the order on (value, tag) produces
/// exactly the interleaved total order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaValue {
    value: Rational64,
    tag: Tag,
}

fn in_unit_interval(q: Rational64) -> bool {
    !q.is_negative() && q <= Rational64::one()
}

impl GammaValue {
    /// The exactly attained value q^, for rational q in [0,1].
    pub fn up(value: Rational64) -> Result<GammaValue, GammaError> {
        if !in_unit_interval(value) {
            return Err(GammaError::OutOfRange(format!("{value} is not in [0,1]")));
        }
        Ok(GammaValue { value, tag: Tag::Up })
    }

    /// The strictly-from-below value qv, for rational q in (0,1].
    pub fn down(value: Rational64) -> Result<GammaValue, GammaError> {
        if !in_unit_interval(value) || value.is_zero() {
            return Err(GammaError::OutOfRange(format!("{value} is not in (0,1]")));
        }
        Ok(GammaValue {
            value,
            tag: Tag::Down,
        })
    }

    pub fn zero() -> GammaValue {
        GammaValue {
            value: Rational64::zero(),
            tag: Tag::Up,
        }
    }

    pub fn one() -> GammaValue {
        GammaValue {
            value: Rational64::one(),
            tag: Tag::Up,
        }
    }

    pub fn value(&self) -> Rational64 {
        self.value
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }
}

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.tag {
            Tag::Up => '^',
            Tag::Down => 'v',
        };
        write!(f, "{}{}", self.value, suffix)
    }
}

/// Addition: values add, and a strictly-from-below summand keeps the sum
/// strictly from below. Partial: the value sum must stay within [0,1].
pub fn gamma_add(x: GammaValue, y: GammaValue) -> Result<GammaValue, GammaError> {
    let value = x.value + y.value;
    if !in_unit_interval(value) {
        return Err(GammaError::OutOfRange(format!(
            "{} + {} leaves [0,1]",
            x, y
        )));
    }
    let tag = if x.tag == Tag::Up && y.tag == Tag::Up {
        Tag::Up
    } else {
        Tag::Down
    };
    Ok(GammaValue { value, tag })
}

pub fn gamma_sum(values: impl IntoIterator<Item = GammaValue>) -> Result<GammaValue, GammaError> {
    values
        .into_iter()
        .try_fold(GammaValue::zero(), gamma_add)
}

/// The grid {0, 1/n, .., n/n}, as reduced rationals.
pub fn grid(n: i64) -> Vec<Rational64> {
    assert!(n >= 1);
    (0..=n).map(|a| Rational64::new(a, n)).collect()
}

/// Rounds a grid point a/m down to the coarser grid with n points, n
/// dividing m: the largest b/n that is at most a/m.
pub fn gamma_floor(m: i64, n: i64, a: Rational64) -> Result<Rational64, GammaError> {
    if m < 1 || n < 1 || m % n != 0 {
        return Err(GammaError::NotADivisor { m, n });
    }
    if !in_unit_interval(a) || !(a * Rational64::from_integer(m)).is_integer() {
        return Err(GammaError::OutOfRange(format!("{a} is not on the {m}-grid")));
    }
    let b = (a * Rational64::from_integer(n)).floor().to_integer();
    Ok(Rational64::new(b, n))
}

/// The n-th coordinate of a tagged value in the inverse-limit picture:
/// the largest grid point at most q for UP, strictly below q for DOWN.
pub fn gamma_approx(x: GammaValue, n: i64) -> Rational64 {
    assert!(n >= 1);
    let scaled = x.value * Rational64::from_integer(n);
    let b = match x.tag {
        Tag::Up => scaled.floor().to_integer(),
        Tag::Down => {
            if scaled.is_integer() {
                scaled.to_integer() - 1
            } else {
                scaled.floor().to_integer()
            }
        }
    };
    Rational64::new(b, n)
}

/// Collapses the tag: both copies of q map to q.
pub fn gamma_retract(x: GammaValue) -> Rational64 {
    x.value
}

/// The canonical section: rational q goes to its attained copy.
pub fn gamma_section(q: Rational64) -> Result<GammaValue, GammaError> {
    GammaValue::up(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn up(a: i64, b: i64) -> GammaValue {
        GammaValue::up(r(a, b)).unwrap()
    }

    fn down(a: i64, b: i64) -> GammaValue {
        GammaValue::down(r(a, b)).unwrap()
    }

    /// All representable values with denominator dividing d.
    fn all_values(d: i64) -> Vec<GammaValue> {
        let mut out = Vec::new();
        for a in 0..=d {
            out.push(GammaValue::up(r(a, d)).unwrap());
            if a > 0 {
                out.push(GammaValue::down(r(a, d)).unwrap());
            }
        }
        out
    }

    #[test]
    fn construction_guards() {
        assert!(GammaValue::up(r(1, 1)).is_ok());
        assert!(GammaValue::up(r(3, 2)).is_err());
        assert!(GammaValue::up(r(-1, 2)).is_err());
        assert!(GammaValue::down(r(0, 1)).is_err());
        assert!(GammaValue::down(r(1, 100)).is_ok());
    }

    #[test]
    fn order_interleaves_the_copies() {
        assert!(down(1, 2) < up(1, 2));
        assert!(up(1, 3) < down(1, 2));
        assert_eq!(up(1, 2), up(2, 4));
        // The defining law: r^ < sv exactly when r < s.
        for x in all_values(6) {
            for y in all_values(6) {
                if x.tag() == Tag::Up && y.tag() == Tag::Down {
                    assert_eq!(x < y, x.value() < y.value(), "{x} vs {y}");
                }
                if x.value() == y.value() && x.tag() == Tag::Down && y.tag() == Tag::Up {
                    assert!(x < y);
                }
            }
        }
    }

    #[test]
    fn nothing_sits_between_the_copies() {
        for x in all_values(4) {
            for q in all_values(4) {
                if x.tag() == Tag::Down {
                    let upper = GammaValue::up(x.value()).unwrap();
                    assert!(!(x < q && q < upper), "{q} between {x} and {upper}");
                }
            }
        }
    }

    #[test]
    fn addition_examples() {
        assert_eq!(gamma_add(up(1, 4), up(1, 4)).unwrap(), up(1, 2));
        assert_eq!(gamma_add(down(1, 4), up(1, 4)).unwrap(), down(1, 2));
        assert_eq!(gamma_add(down(1, 4), down(1, 4)).unwrap(), down(1, 2));
        let x = down(3, 7);
        assert_eq!(gamma_add(GammaValue::zero(), x).unwrap(), x);
        assert!(gamma_add(up(3, 4), up(1, 2)).is_err());
    }

    #[test]
    fn addition_is_commutative_and_associative() {
        let vals = all_values(4);
        for &x in &vals {
            for &y in &vals {
                let xy = gamma_add(x, y);
                let yx = gamma_add(y, x);
                match (xy, yx) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b),
                    (Err(_), Err(_)) => {}
                    _ => panic!("commutativity of definedness failed"),
                }
                for &z in &vals {
                    if let (Ok(a), Ok(b)) = (gamma_add(x, y), gamma_add(y, z)) {
                        let left = gamma_add(a, z);
                        let right = gamma_add(x, b);
                        match (left, right) {
                            (Ok(l), Ok(r)) => assert_eq!(l, r),
                            (Err(_), Err(_)) => {}
                            _ => panic!("associativity of definedness failed"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn retraction_is_additive() {
        let vals = all_values(5);
        for &x in &vals {
            for &y in &vals {
                if let Ok(sum) = gamma_add(x, y) {
                    assert_eq!(gamma_retract(sum), gamma_retract(x) + gamma_retract(y));
                }
            }
        }
    }

    #[test]
    fn flooring_examples() {
        assert_eq!(gamma_floor(6, 3, r(5, 6)).unwrap(), r(2, 3));
        assert_eq!(gamma_floor(6, 3, r(2, 6)).unwrap(), r(1, 3));
        assert!(matches!(
            gamma_floor(6, 4, r(1, 2)),
            Err(GammaError::NotADivisor { m: 6, n: 4 })
        ));
        assert!(gamma_floor(6, 3, r(1, 4)).is_err());
    }

    #[test]
    fn approximation_examples() {
        assert_eq!(gamma_approx(down(1, 2), 4), r(1, 4));
        assert_eq!(gamma_approx(up(1, 2), 4), r(1, 2));
        assert_eq!(gamma_approx(down(1, 4), 2), r(0, 1));
        assert_eq!(gamma_approx(up(1, 1), 1), r(1, 1));
        assert_eq!(gamma_approx(down(1, 1), 1), r(0, 1));
    }

    #[test]
    fn approximations_cohere_with_flooring() {
        for x in all_values(6) {
            for n in 1..=6i64 {
                for k in 1..=4i64 {
                    let m = n * k;
                    if m > 24 {
                        continue;
                    }
                    let fine = gamma_approx(x, m);
                    let coarse = gamma_approx(x, n);
                    assert_eq!(gamma_floor(m, n, fine).unwrap(), coarse, "{x} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn retract_section_laws() {
        assert_eq!(gamma_retract(down(3, 4)), r(3, 4));
        assert_eq!(gamma_section(r(1, 2)).unwrap(), up(1, 2));
        for d in 1..=12i64 {
            for a in 0..=d {
                let q = r(a, d);
                assert_eq!(gamma_retract(gamma_section(q).unwrap()), q);
            }
        }
    }

    #[test]
    fn addition_agrees_with_levelwise_flooring() {
        // At a level m fine enough, adding the m-th approximations and
        // flooring down to n reproduces the n-th approximation of the sum.
        for d in 1..=6i64 {
            for x in all_values(d) {
                for y in all_values(d) {
                    let Ok(sum) = gamma_add(x, y) else { continue };
                    for n in 1..=4i64 {
                        let m = 8 * n * d;
                        let level_sum = gamma_approx(x, m) + gamma_approx(y, m);
                        assert_eq!(
                            gamma_floor(m, n, level_sum).unwrap(),
                            gamma_approx(sum, n),
                            "{x} + {y} at m={m} n={n}"
                        );
                    }
                }
            }
        }
    }
}
