//! Modal formulas and their concrete grammar.
//!
//! Grammar: variables `[a-z][a-z0-9]*`, constants `bot`, `top`, connectives
//! `~ & | ->`, modality `dia`. Precedence from tightest to loosest:
//! `~`/`dia`, `&`, `|`, `->`; implication is right-associative and desugars
//! to negation and disjunction. Box is not primitive: write `~dia ~phi`.

use std::fmt;

use crate::modal::ModalError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModalFormula {
    Bot,
    Top,
    Var(String),
    Not(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Dia(Box<ModalFormula>),
}

impl ModalFormula {
    /// Maximal nesting depth of the modality.
    pub fn rank(&self) -> usize {
        match self {
            ModalFormula::Bot | ModalFormula::Top | ModalFormula::Var(_) => 0,
            ModalFormula::Not(a) => a.rank(),
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) => a.rank().max(b.rank()),
            ModalFormula::Dia(a) => a.rank() + 1,
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            ModalFormula::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            ModalFormula::Not(a) | ModalFormula::Dia(a) => a.collect_vars(out),
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            ModalFormula::Bot | ModalFormula::Top => {}
        }
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Parenthesize binary subterms; unary connectives bind tightest.
        fn atom(phi: &ModalFormula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match phi {
                ModalFormula::And(_, _) | ModalFormula::Or(_, _) => write!(f, "({phi})"),
                _ => write!(f, "{phi}"),
            }
        }
        match self {
            ModalFormula::Bot => write!(f, "bot"),
            ModalFormula::Top => write!(f, "top"),
            ModalFormula::Var(v) => write!(f, "{v}"),
            ModalFormula::Not(a) => {
                write!(f, "~")?;
                atom(a, f)
            }
            ModalFormula::Dia(a) => {
                write!(f, "dia ")?;
                atom(a, f)
            }
            ModalFormula::And(a, b) => {
                atom(a, f)?;
                write!(f, " & ")?;
                atom(b, f)
            }
            ModalFormula::Or(a, b) => {
                atom(a, f)?;
                write!(f, " | ")?;
                atom(b, f)
            }
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
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

    fn err(&self, expected: &str) -> ModalError {
        ModalError::Syntax {
            pos: self.pos,
            expected: expected.into(),
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self.text.get(start)?.is_ascii_lowercase() {
            return None;
        }
        let mut end = start + 1;
        while end < self.text.len()
            && (self.text[end].is_ascii_lowercase() || self.text[end].is_ascii_digit())
        {
            end += 1;
        }
        self.pos = end;
        Some(std::str::from_utf8(&self.text[start..end]).unwrap())
    }

    // implication (right-associative, lowest precedence)
    fn formula(&mut self) -> Result<ModalFormula, ModalError> {
        let left = self.disjunction()?;
        self.skip_ws();
        if self.text[self.pos..].starts_with(b"->") {
            self.pos += 2;
            let right = self.formula()?;
            return Ok(ModalFormula::Or(
                Box::new(ModalFormula::Not(Box::new(left))),
                Box::new(right),
            ));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<ModalFormula, ModalError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let right = self.conjunction()?;
            left = ModalFormula::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<ModalFormula, ModalError> {
        let mut left = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            let right = self.unary()?;
            left = ModalFormula::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<ModalFormula, ModalError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(ModalFormula::Not(Box::new(self.unary()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.formula()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let w = self.word().unwrap();
                match w {
                    "bot" => Ok(ModalFormula::Bot),
                    "top" => Ok(ModalFormula::Top),
                    "dia" => Ok(ModalFormula::Dia(Box::new(self.unary()?))),
                    _ => Ok(ModalFormula::Var(w.into())),
                }
            }
            _ => Err(self.err("a formula")),
        }
    }
}

pub fn parse_modal(text: &str) -> Result<ModalFormula, ModalError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    let phi = p.formula()?;
    if p.peek().is_some() {
        return Err(p.err("end of input"));
    }
    Ok(phi)
}
