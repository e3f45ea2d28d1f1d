//! First-order formulas over a relational signature.
//!
//! Grammar: atoms `R(t,..)`, `t=t'`, `bot`, `top`; connectives `~ & | ->`
//! with the usual precedence (`~` tightest, `->` loosest and
//! right-associative); quantifiers `exists vI.`, `forall vI.` and the
//! annotated `exists[k] vI.`, whose body extends as far right as possible.
//! Terms are variables `v1, v2, ..` or declared constant names.

use std::collections::BTreeSet;
use std::fmt;

use crate::fo::signature::Signature;
use crate::fo::structure::FinStructure;
use crate::fo::FoError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoTerm {
    /// v_i, 1-based.
    Var(usize),
    /// Index into the signature's constants.
    Const(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoFormula {
    Bot,
    Top,
    /// Relation index into the signature, plus argument terms.
    Atom(usize, Vec<FoTerm>),
    Eq(FoTerm, FoTerm),
    Not(Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    Imp(Box<FoFormula>, Box<FoFormula>),
    Exists(usize, Box<FoFormula>),
    Forall(usize, Box<FoFormula>),
    /// `exists[k] vI.`: the annotation names a semiring element and is
    /// resolved where a semiring is in scope.
    ExistsK(String, usize, Box<FoFormula>),
}

impl FoFormula {
    pub fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<usize>, out: &mut BTreeSet<usize>) {
        let term = |t: &FoTerm, bound: &Vec<usize>, out: &mut BTreeSet<usize>| {
            if let FoTerm::Var(i) = t {
                if !bound.contains(i) {
                    out.insert(*i);
                }
            }
        };
        match self {
            FoFormula::Bot | FoFormula::Top => {}
            FoFormula::Atom(_, args) => {
                for t in args {
                    term(t, bound, out);
                }
            }
            FoFormula::Eq(a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            FoFormula::Not(a) => a.collect_free(bound, out),
            FoFormula::And(a, b) | FoFormula::Or(a, b) | FoFormula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FoFormula::Exists(v, a) | FoFormula::Forall(v, a) | FoFormula::ExistsK(_, v, a) => {
                bound.push(*v);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_semiring_quantifier(&self) -> bool {
        match self {
            FoFormula::ExistsK(_, _, _) => true,
            FoFormula::Bot | FoFormula::Top | FoFormula::Atom(_, _) | FoFormula::Eq(_, _) => false,
            FoFormula::Not(a) | FoFormula::Exists(_, a) | FoFormula::Forall(_, a) => {
                a.has_semiring_quantifier()
            }
            FoFormula::And(a, b) | FoFormula::Or(a, b) | FoFormula::Imp(a, b) => {
                a.has_semiring_quantifier() || b.has_semiring_quantifier()
            }
        }
    }

    /// Renders against a signature, for reports.
    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        DisplayFormula { phi: self, sig }
    }
}

struct DisplayFormula<'a> {
    phi: &'a FoFormula,
    sig: &'a Signature,
}

impl fmt::Display for DisplayFormula<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self.phi, self.sig, f)
    }
}

fn write_term(t: &FoTerm, sig: &Signature, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        FoTerm::Var(i) => write!(f, "v{i}"),
        FoTerm::Const(c) => write!(f, "{}", sig.constants()[*c]),
    }
}

fn write_formula(phi: &FoFormula, sig: &Signature, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let atom = |phi: &FoFormula, f: &mut fmt::Formatter<'_>| match phi {
        FoFormula::And(_, _)
        | FoFormula::Or(_, _)
        | FoFormula::Imp(_, _)
        | FoFormula::Exists(_, _)
        | FoFormula::Forall(_, _)
        | FoFormula::ExistsK(_, _, _) => {
            write!(f, "(")?;
            write_formula(phi, sig, f)?;
            write!(f, ")")
        }
        _ => write_formula(phi, sig, f),
    };
    match phi {
        FoFormula::Bot => write!(f, "bot"),
        FoFormula::Top => write!(f, "top"),
        FoFormula::Atom(r, args) => {
            write!(f, "{}(", sig.relations()[*r].0)?;
            for (k, t) in args.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write_term(t, sig, f)?;
            }
            write!(f, ")")
        }
        FoFormula::Eq(a, b) => {
            write_term(a, sig, f)?;
            write!(f, "=")?;
            write_term(b, sig, f)
        }
        FoFormula::Not(a) => {
            write!(f, "~")?;
            atom(a, f)
        }
        FoFormula::And(a, b) => {
            atom(a, f)?;
            write!(f, " & ")?;
            atom(b, f)
        }
        FoFormula::Or(a, b) => {
            atom(a, f)?;
            write!(f, " | ")?;
            atom(b, f)
        }
        FoFormula::Imp(a, b) => {
            atom(a, f)?;
            write!(f, " -> ")?;
            atom(b, f)
        }
        FoFormula::Exists(v, a) => {
            write!(f, "exists v{v}. ")?;
            write_formula(a, sig, f)
        }
        FoFormula::Forall(v, a) => {
            write!(f, "forall v{v}. ")?;
            write_formula(a, sig, f)
        }
        FoFormula::ExistsK(k, v, a) => {
            write!(f, "exists[{k}] v{v}. ")?;
            write_formula(a, sig, f)
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, expected: &str) -> FoError {
        FoError::Syntax {
            pos: self.pos,
            expected: expected.into(),
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self
            .text
            .get(start)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            return None;
        }
        let mut end = start + 1;
        while end < self.text.len()
            && (self.text[end].is_ascii_alphanumeric() || self.text[end] == b'_')
        {
            end += 1;
        }
        self.pos = end;
        Some(std::str::from_utf8(&self.text[start..end]).unwrap())
    }

    fn variable_of(w: &str) -> Option<usize> {
        let digits = w.strip_prefix('v')?;
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok().filter(|&i| i >= 1)
    }

    fn term_of(&self, w: &str) -> Result<FoTerm, FoError> {
        if let Some(i) = Self::variable_of(w) {
            return Ok(FoTerm::Var(i));
        }
        self.sig
            .constant(w)
            .map(FoTerm::Const)
            .ok_or_else(|| FoError::UnknownSymbol(w.into()))
    }

    fn formula(&mut self) -> Result<FoFormula, FoError> {
        let left = self.disjunction()?;
        self.skip_ws();
        if self.text[self.pos..].starts_with(b"->") {
            self.pos += 2;
            let right = self.formula()?;
            return Ok(FoFormula::Imp(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<FoFormula, FoError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let right = self.conjunction()?;
            left = FoFormula::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<FoFormula, FoError> {
        let mut left = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            let right = self.unary()?;
            left = FoFormula::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn quantifier_tail(
        &mut self,
        build: impl FnOnce(usize, Box<FoFormula>) -> FoFormula,
    ) -> Result<FoFormula, FoError> {
        let w = self.word().ok_or_else(|| self.err("a variable"))?;
        let v = Self::variable_of(w).ok_or_else(|| self.err("a variable"))?;
        if !self.eat(b'.') {
            return Err(self.err("'.'"));
        }
        Ok(build(v, Box::new(self.formula()?)))
    }

    fn unary(&mut self) -> Result<FoFormula, FoError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(FoFormula::Not(Box::new(self.unary()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.formula()?;
                if !self.eat(b')') {
                    return Err(self.err("')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let w = self.word().unwrap();
                match w {
                    "bot" => Ok(FoFormula::Bot),
                    "top" => Ok(FoFormula::Top),
                    "forall" => self.quantifier_tail(FoFormula::Forall),
                    "exists" => {
                        if self.eat(b'[') {
                            self.skip_ws();
                            let from = self.pos;
                            while self.pos < self.text.len() && self.text[self.pos] != b']' {
                                self.pos += 1;
                            }
                            let k = std::str::from_utf8(&self.text[from..self.pos])
                                .unwrap()
                                .trim()
                                .to_string();
                            if k.is_empty() || !self.eat(b']') {
                                return Err(self.err("a semiring element in brackets"));
                            }
                            self.quantifier_tail(|v, a| FoFormula::ExistsK(k, v, a))
                        } else {
                            self.quantifier_tail(FoFormula::Exists)
                        }
                    }
                    _ => self.atom_after_word(w, start),
                }
            }
            _ => Err(self.err("a formula")),
        }
    }

    fn atom_after_word(&mut self, w: &str, start: usize) -> Result<FoFormula, FoError> {
        if self.peek() == Some(b'(') {
            // Relation application.
            let (index, arity) = self
                .sig
                .relation(w)
                .ok_or_else(|| FoError::UnknownSymbol(w.into()))?;
            self.pos += 1;
            let mut args = Vec::new();
            loop {
                let t = self.word().ok_or_else(|| self.err("a term"))?;
                args.push(self.term_of(t)?);
                if self.eat(b',') {
                    continue;
                }
                if self.eat(b')') {
                    break;
                }
                return Err(self.err("',' or ')'"));
            }
            if args.len() != arity {
                return Err(FoError::ArityMismatch {
                    symbol: w.into(),
                    expected: arity,
                    got: args.len(),
                });
            }
            return Ok(FoFormula::Atom(index, args));
        }
        // Equality atom.
        let lhs = self.term_of(w).map_err(|e| {
            if self.sig.relation(w).is_some() {
                FoError::Syntax {
                    pos: start,
                    expected: "'(' after a relation symbol".into(),
                }
            } else {
                e
            }
        })?;
        if !self.eat(b'=') {
            return Err(self.err("'='"));
        }
        let rhs = self.word().ok_or_else(|| self.err("a term"))?;
        Ok(FoFormula::Eq(lhs, self.term_of(rhs)?))
    }
}

pub fn parse_fo(text: &str, sig: &Signature) -> Result<FoFormula, FoError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        sig,
    };
    let phi = p.formula()?;
    if p.peek().is_some() {
        return Err(p.err("end of input"));
    }
    Ok(phi)
}

fn term_value(t: &FoTerm, a: &FinStructure, env: &[(usize, usize)]) -> Result<usize, FoError> {
    match t {
        FoTerm::Const(c) => Ok(a.constant(*c)),
        FoTerm::Var(i) => env
            .iter()
            .rev()
            .find(|(v, _)| v == i)
            .map(|&(_, e)| e)
            .ok_or(FoError::UnboundVariable(*i)),
    }
}

fn eval(phi: &FoFormula, a: &FinStructure, env: &mut Vec<(usize, usize)>) -> Result<bool, FoError> {
    match phi {
        FoFormula::Bot => Ok(false),
        FoFormula::Top => Ok(true),
        FoFormula::Atom(r, args) => {
            let tuple: Vec<usize> = args
                .iter()
                .map(|t| term_value(t, a, env))
                .collect::<Result<_, _>>()?;
            Ok(a.holds(*r, &tuple))
        }
        FoFormula::Eq(s, t) => Ok(term_value(s, a, env)? == term_value(t, a, env)?),
        FoFormula::Not(b) => Ok(!eval(b, a, env)?),
        FoFormula::And(b, c) => Ok(eval(b, a, env)? && eval(c, a, env)?),
        FoFormula::Or(b, c) => Ok(eval(b, a, env)? || eval(c, a, env)?),
        FoFormula::Imp(b, c) => Ok(!eval(b, a, env)? || eval(c, a, env)?),
        FoFormula::Exists(v, b) => {
            for e in 0..a.universe() {
                env.push((*v, e));
                let ok = eval(b, a, env)?;
                env.pop();
                if ok {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        FoFormula::Forall(v, b) => {
            for e in 0..a.universe() {
                env.push((*v, e));
                let ok = eval(b, a, env)?;
                env.pop();
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        FoFormula::ExistsK(_, _, _) => Err(FoError::SemiringQuantifier),
    }
}

/// Tarskian evaluation with an assignment on an explicit variable window.
/// `vars` and `assignment` run in parallel; variable values are 0-based
/// universe elements.
pub fn evaluate(
    a: &FinStructure,
    vars: &[usize],
    assignment: &[usize],
    phi: &FoFormula,
) -> Result<bool, FoError> {
    assert_eq!(vars.len(), assignment.len());
    let mut env: Vec<(usize, usize)> = vars.iter().copied().zip(assignment.iter().copied()).collect();
    eval(phi, a, &mut env)
}

/// Evaluation of a sentence (no free variables).
pub fn evaluate_sentence(a: &FinStructure, phi: &FoFormula) -> Result<bool, FoError> {
    evaluate(a, &[], &[], phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo::signature::Signature;
    use std::collections::BTreeSet;

    fn sig() -> Signature {
        Signature::new(vec![("P".into(), 1), ("R".into(), 2)], vec!["c".into()]).unwrap()
    }

    fn structure(universe: usize, p: &[usize], r: &[(usize, usize)], c: usize) -> FinStructure {
        FinStructure::new(
            &sig(),
            universe,
            vec![
                p.iter().map(|&e| vec![e]).collect(),
                r.iter().map(|&(x, y)| vec![x, y]).collect(),
            ],
            vec![c],
        )
        .unwrap()
    }

    #[test]
    fn parse_exists() {
        let phi = parse_fo("exists v1. P(v1)", &sig()).unwrap();
        assert_eq!(
            phi,
            FoFormula::Exists(1, Box::new(FoFormula::Atom(0, vec![FoTerm::Var(1)])))
        );
        assert!(phi.free_vars().is_empty());
    }

    #[test]
    fn free_variables_of_forall() {
        let phi = parse_fo("forall v1. R(v1,v2)", &sig()).unwrap();
        assert_eq!(phi.free_vars(), BTreeSet::from([2]));
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(
            parse_fo("P(v1,v2)", &sig()),
            Err(FoError::ArityMismatch {
                expected: 1,
                got: 2,
                ..
            })
        ));
    }

    #[test]
    fn unknown_symbol() {
        assert!(matches!(
            parse_fo("Q(v1)", &sig()),
            Err(FoError::UnknownSymbol(_))
        ));
    }

    #[test]
    fn annotated_quantifier() {
        let phi = parse_fo("exists[2] v1. P(v1)", &sig()).unwrap();
        assert!(matches!(&phi, FoFormula::ExistsK(k, 1, _) if k == "2"));
        assert!(phi.has_semiring_quantifier());
        assert!(matches!(
            evaluate_sentence(&structure(1, &[], &[], 0), &phi),
            Err(FoError::SemiringQuantifier)
        ));
    }

    #[test]
    fn equality_and_constants() {
        let a = structure(2, &[], &[], 1);
        let phi = parse_fo("exists v1. v1=c", &sig()).unwrap();
        assert!(evaluate_sentence(&a, &phi).unwrap());
        let psi = parse_fo("forall v1. v1=c", &sig()).unwrap();
        assert!(!evaluate_sentence(&a, &psi).unwrap());
    }

    #[test]
    fn nested_quantifiers() {
        // A = {1,2}, R = {(1,2)}: exists pairs related, but not all
        // diagonal pairs.
        let a = structure(2, &[], &[(0, 1)], 0);
        let yes = parse_fo("exists v1. exists v2. R(v1,v2)", &sig()).unwrap();
        assert!(evaluate_sentence(&a, &yes).unwrap());
        let no = parse_fo("forall v1. R(v1,v1)", &sig()).unwrap();
        assert!(!evaluate_sentence(&a, &no).unwrap());
        assert!(!evaluate_sentence(&a, &FoFormula::Bot).unwrap());
    }

    #[test]
    fn unbound_variable_reported() {
        let a = structure(1, &[], &[], 0);
        let phi = parse_fo("P(v3)", &sig()).unwrap();
        assert!(matches!(
            evaluate(&a, &[1, 2], &[0, 0], &phi),
            Err(FoError::UnboundVariable(3))
        ));
    }

    #[test]
    fn quantifier_scope_is_maximal() {
        // exists v1. P(v1) -> bot is exists v1.(P(v1) -> bot), true when
        // some element is outside P.
        let a = structure(2, &[0], &[], 0);
        let phi = parse_fo("exists v1. P(v1) -> bot", &sig()).unwrap();
        assert!(evaluate_sentence(&a, &phi).unwrap());
        let all_p = structure(1, &[0], &[], 0);
        assert!(!evaluate_sentence(&all_p, &phi).unwrap());
    }

    #[test]
    fn display_round_trip() {
        let s = sig();
        for text in [
            "exists v1. P(v1) & R(v1,v2)",
            "~(v1=v2) | bot",
            "forall v2. exists[1] v1. R(v2,v1)",
            "P(c) -> top",
        ] {
            let phi = parse_fo(text, &s).unwrap();
            let again = parse_fo(&phi.display(&s).to_string(), &s).unwrap();
            assert_eq!(phi, again);
        }
    }

    #[test]
    fn relation_needs_parens() {
        assert!(matches!(parse_fo("P", &sig()), Err(FoError::Syntax { .. })));
    }
}
