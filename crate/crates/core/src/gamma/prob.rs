//! A propositional logic of graded assertions over first-order formulas,
//! interpreted in normalized tagged-value measures.
//!
//! Atoms assert "the measure of φ is at least q" or "strictly below q"
//! for a rational grade q; a measure satisfies P>=q φ when its value on φ
//! is at least the attained copy of q. The rule checker sweeps the nine
//! inference rules of this logic over a universe of measures and a grid of
//! grades, reporting the first counterexample per rule if any.

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::caps::Caps;
use crate::fo::enumerate::enumerate_structures;
use crate::fo::formula::FoFormula;
use crate::fo::signature::Signature;
use crate::gamma::pairing::{measure_of, GammaMeasure};
use crate::gamma::value::{grid, GammaValue};
use crate::gamma::GammaError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbFormula {
    Bot,
    Top,
    Not(Box<ProbFormula>),
    And(Box<ProbFormula>, Box<ProbFormula>),
    Or(Box<ProbFormula>, Box<ProbFormula>),
    Imp(Box<ProbFormula>, Box<ProbFormula>),
    /// P>=q φ: the measure of φ is at least q, exactly attained.
    Geq(Rational64, FoFormula),
    /// P<q φ: the measure of φ is strictly below q.
    Lt(Rational64, FoFormula),
}

impl ProbFormula {
    pub fn display<'a>(&'a self, sig: &'a Signature) -> DisplayProb<'a> {
        DisplayProb { phi: self, sig }
    }

    /// The distinct first-order formulas under graded atoms, in order of
    /// first appearance. These span the measure domain the formula needs.
    pub fn fo_parts(&self) -> Vec<&FoFormula> {
        fn walk<'a>(phi: &'a ProbFormula, out: &mut Vec<&'a FoFormula>) {
            match phi {
                ProbFormula::Bot | ProbFormula::Top => {}
                ProbFormula::Not(p) => walk(p, out),
                ProbFormula::And(l, r) | ProbFormula::Or(l, r) | ProbFormula::Imp(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                ProbFormula::Geq(_, f) | ProbFormula::Lt(_, f) => {
                    if !out.contains(&f) {
                        out.push(f);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

pub struct DisplayProb<'a> {
    phi: &'a ProbFormula,
    sig: &'a Signature,
}

fn write_prob(
    f: &mut std::fmt::Formatter<'_>,
    phi: &ProbFormula,
    sig: &Signature,
    atom_position: bool,
) -> std::fmt::Result {
    let parens = atom_position && !matches!(phi, ProbFormula::Bot | ProbFormula::Top | ProbFormula::Geq(..) | ProbFormula::Lt(..) | ProbFormula::Not(_));
    if parens {
        write!(f, "(")?;
    }
    match phi {
        ProbFormula::Bot => write!(f, "bot")?,
        ProbFormula::Top => write!(f, "top")?,
        ProbFormula::Not(p) => {
            write!(f, "~")?;
            write_prob(f, p, sig, true)?;
        }
        ProbFormula::And(l, r) => {
            write_prob(f, l, sig, true)?;
            write!(f, " & ")?;
            write_prob(f, r, sig, true)?;
        }
        ProbFormula::Or(l, r) => {
            write_prob(f, l, sig, true)?;
            write!(f, " | ")?;
            write_prob(f, r, sig, true)?;
        }
        ProbFormula::Imp(l, r) => {
            write_prob(f, l, sig, true)?;
            write!(f, " -> ")?;
            write_prob(f, r, sig, true)?;
        }
        ProbFormula::Geq(q, phi) => write!(f, "P>={} {{{}}}", q, phi.display(sig))?,
        ProbFormula::Lt(q, phi) => write!(f, "P<{} {{{}}}", q, phi.display(sig))?,
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

impl std::fmt::Display for DisplayProb<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write_prob(f, self.phi, self.sig, false)
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, expected: &str) -> Result<T, GammaError> {
        Err(GammaError::Syntax {
            pos: self.pos,
            expected: expected.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(std::str::from_utf8(&self.text[start..self.pos]).unwrap())
        }
    }

    fn integer(&mut self) -> Result<i64, GammaError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("a number");
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| GammaError::Syntax {
                pos: start,
                expected: "a number within range".into(),
            })
    }

    fn rational(&mut self) -> Result<Rational64, GammaError> {
        let a = self.integer()?;
        let q = if self.pos < self.text.len() && self.text[self.pos] == b'/' {
            self.pos += 1;
            let b = self.integer()?;
            if b == 0 {
                return self.err("a nonzero denominator");
            }
            Rational64::new(a, b)
        } else {
            Rational64::from_integer(a)
        };
        if q < Rational64::zero() || q > Rational64::one() {
            return Err(GammaError::OutOfRange(format!("grade {q} is not in [0,1]")));
        }
        Ok(q)
    }

    fn graded_atom(&mut self) -> Result<ProbFormula, GammaError> {
        // Caller consumed "P>=" or "P<" up to the grade.
        let geq = if self.eat("P>=") {
            true
        } else if self.eat("P<") {
            false
        } else {
            return self.err("P>= or P<");
        };
        let q = self.rational()?;
        self.skip_ws();
        if !self.eat("{") {
            return self.err("{");
        }
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos] != b'}' {
            self.pos += 1;
        }
        if self.pos == self.text.len() {
            return self.err("}");
        }
        let inner = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        self.pos += 1;
        let phi = crate::fo::formula::parse_fo(inner, self.sig)?;
        Ok(if geq {
            ProbFormula::Geq(q, phi)
        } else {
            ProbFormula::Lt(q, phi)
        })
    }

    fn formula(&mut self) -> Result<ProbFormula, GammaError> {
        let left = self.disjunction()?;
        if self.eat("->") {
            let right = self.formula()?;
            return Ok(ProbFormula::Imp(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<ProbFormula, GammaError> {
        let mut out = self.conjunction()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let next = self.conjunction()?;
            out = ProbFormula::Or(Box::new(out), Box::new(next));
        }
        Ok(out)
    }

    fn conjunction(&mut self) -> Result<ProbFormula, GammaError> {
        let mut out = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            let next = self.unary()?;
            out = ProbFormula::And(Box::new(out), Box::new(next));
        }
        Ok(out)
    }

    fn unary(&mut self) -> Result<ProbFormula, GammaError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(ProbFormula::Not(Box::new(self.unary()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.formula()?;
                self.skip_ws();
                if !self.eat(")") {
                    return self.err(")");
                }
                Ok(inner)
            }
            Some(b'P') => self.graded_atom(),
            _ => {
                let at = self.pos;
                match self.word() {
                    Some("top") => Ok(ProbFormula::Top),
                    Some("bot") => Ok(ProbFormula::Bot),
                    _ => {
                        self.pos = at;
                        self.err("a graded atom, top, bot, ~, or (")
                    }
                }
            }
        }
    }
}

pub fn parse_prob(text: &str, sig: &Signature) -> Result<ProbFormula, GammaError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        sig,
    };
    let phi = p.formula()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return p.err("end of input");
    }
    Ok(phi)
}

fn geq(v: GammaValue, q: Rational64) -> Result<bool, GammaError> {
    Ok(v >= GammaValue::up(q)?)
}

/// Satisfaction: graded atoms compare the measure's value against the
/// attained copy of the grade; connectives are classical.
pub fn prob_sat(mu: &GammaMeasure, pi: &ProbFormula) -> Result<bool, GammaError> {
    Ok(match pi {
        ProbFormula::Bot => false,
        ProbFormula::Top => true,
        ProbFormula::Not(p) => !prob_sat(mu, p)?,
        ProbFormula::And(l, r) => prob_sat(mu, l)? && prob_sat(mu, r)?,
        ProbFormula::Or(l, r) => prob_sat(mu, l)? || prob_sat(mu, r)?,
        ProbFormula::Imp(l, r) => !prob_sat(mu, l)? || prob_sat(mu, r)?,
        ProbFormula::Geq(q, phi) => geq(mu.value_of(phi)?, *q)?,
        ProbFormula::Lt(q, phi) => !geq(mu.value_of(phi)?, *q)?,
    })
}

#[derive(Clone, Debug)]
pub struct RuleReport {
    pub name: &'static str,
    pub instances: u64,
    pub counterexample: Option<String>,
}

impl RuleReport {
    pub fn sound(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Values of every pool formula and every pairwise join and meet, per
/// measure. Index layout: i in 0..f for pool[i], then f + i*f + j for
/// pool[i] ∨ pool[j], then f + f*f + i*f + j for pool[i] ∧ pool[j].
struct ValueTable {
    f: usize,
    values: Vec<GammaValue>,
}

impl ValueTable {
    fn build(mu: &GammaMeasure, pool: &[FoFormula]) -> Result<ValueTable, GammaError> {
        let f = pool.len();
        let mut values = Vec::with_capacity(f + 2 * f * f);
        for phi in pool {
            values.push(mu.value_of(phi)?);
        }
        for op in [FoFormula::Or as fn(_, _) -> _, FoFormula::And as fn(_, _) -> _] {
            for phi in pool {
                for psi in pool {
                    let combo = op(Box::new(phi.clone()), Box::new(psi.clone()));
                    values.push(mu.value_of(&combo)?);
                }
            }
        }
        Ok(ValueTable { f, values })
    }

    fn base(&self, i: usize) -> GammaValue {
        self.values[i]
    }

    fn or(&self, i: usize, j: usize) -> GammaValue {
        self.values[self.f + i * self.f + j]
    }

    fn and(&self, i: usize, j: usize) -> GammaValue {
        self.values[self.f + self.f * self.f + i * self.f + j]
    }
}

/// Sweeps the nine inference rules over a universe of measures, a formula
/// pool (bottom and top are added), and the grade grid with the given
/// denominator. Entailment side conditions are read off semantically from
/// the shared model space.
pub fn check_rules(
    universe: &[GammaMeasure],
    pool: &[FoFormula],
    grid_denominator: i64,
) -> Result<Vec<RuleReport>, GammaError> {
    let mut pool: Vec<FoFormula> = pool.to_vec();
    if !pool.contains(&FoFormula::Bot) {
        pool.insert(0, FoFormula::Bot);
    }
    if !pool.contains(&FoFormula::Top) {
        pool.push(FoFormula::Top);
    }
    let qs = grid(grid_denominator);
    let tables: Vec<ValueTable> = universe
        .iter()
        .map(|mu| ValueTable::build(mu, &pool))
        .collect::<Result<_, _>>()?;
    // Semantic entailment over the shared space, used as a side condition.
    let entails: Vec<Vec<bool>> = if let Some(first) = universe.first() {
        let sets: Vec<_> = pool
            .iter()
            .map(|phi| first.space().semantics_set(phi))
            .collect::<Result<_, _>>()?;
        sets.iter()
            .map(|a| sets.iter().map(|b| a.is_subset(b)).collect())
            .collect()
    } else {
        vec![vec![true; pool.len()]; pool.len()]
    };

    let bot = pool.iter().position(|p| *p == FoFormula::Bot).unwrap();
    let top = pool.iter().position(|p| *p == FoFormula::Top).unwrap();
    let f = pool.len();
    let mut reports = Vec::new();

    // An instance is one premise/conclusion check for one measure and one
    // choice of formulas and grades; `instances` counts the checks run up
    // to and including the first counterexample.
    let mut sweep =
        |name: &'static str,
         check: &mut dyn FnMut(usize, &ValueTable, &mut u64) -> Result<Option<String>, GammaError>|
         -> Result<(), GammaError> {
            let mut instances = 0u64;
            let mut counterexample = None;
            for (mi, t) in tables.iter().enumerate() {
                if counterexample.is_none() {
                    if let Some(label) = check(mi, t, &mut instances)? {
                        counterexample = Some(format!("measure #{mi}: {label}"));
                    }
                }
            }
            reports.push(RuleReport {
                name,
                instances,
                counterexample,
            });
            Ok(())
        };

    let q_up = |q: Rational64| GammaValue::up(q);

    sweep("grade-monotonicity", &mut |_, t, n| {
        for i in 0..f {
            for &qv in &qs {
                for &pv in &qs {
                    if pv > qv {
                        continue;
                    }
                    *n += 1;
                    if t.base(i) >= q_up(qv)? && !(t.base(i) >= q_up(pv)?) {
                        return Ok(Some(format!("p={pv} q={qv} phi={:?}", pool[i])));
                    }
                }
            }
        }
        Ok(None)
    })?;

    sweep("consequence-monotonicity", &mut |_, t, n| {
        for i in 0..f {
            for j in 0..f {
                if !entails[i][j] {
                    continue;
                }
                for &qv in &qs {
                    *n += 1;
                    if t.base(i) >= q_up(qv)? && !(t.base(j) >= q_up(qv)?) {
                        return Ok(Some(format!(
                            "q={qv} phi={:?} psi={:?}",
                            pool[i], pool[j]
                        )));
                    }
                }
            }
        }
        Ok(None)
    })?;

    sweep("bottom-at-grade-zero", &mut |_, t, n| {
        *n += 1;
        if t.base(bot) >= GammaValue::zero() {
            Ok(None)
        } else {
            Ok(Some("mu(bot) < 0^".into()))
        }
    })?;

    sweep("bottom-below-positive-grades", &mut |_, t, n| {
        for &qv in &qs {
            if qv <= Rational64::zero() {
                continue;
            }
            *n += 1;
            if t.base(bot) >= q_up(qv)? {
                return Ok(Some(format!("mu(bot) >= {qv}^")));
            }
        }
        Ok(None)
    })?;

    sweep("top-at-every-grade", &mut |_, t, n| {
        for &qv in &qs {
            *n += 1;
            if !(t.base(top) >= q_up(qv)?) {
                return Ok(Some(format!("mu(top) < {qv}^")));
            }
        }
        Ok(None)
    })?;

    sweep("negation-forward", &mut |mi, _, n| {
        // P>=q φ entails ~P<q φ; checked through the satisfaction clauses.
        for (i, phi) in pool.iter().enumerate() {
            for &qv in &qs {
                *n += 1;
                let premise = ProbFormula::Geq(qv, phi.clone());
                let conclusion = ProbFormula::Not(Box::new(ProbFormula::Lt(qv, phi.clone())));
                if prob_sat(&universe[mi], &premise)? && !prob_sat(&universe[mi], &conclusion)? {
                    return Ok(Some(format!("q={qv} phi={:?}", pool[i])));
                }
            }
        }
        Ok(None)
    })?;

    sweep("negation-backward", &mut |mi, _, n| {
        // ~P<q φ entails P>=q φ.
        for (i, phi) in pool.iter().enumerate() {
            for &qv in &qs {
                *n += 1;
                let premise = ProbFormula::Not(Box::new(ProbFormula::Lt(qv, phi.clone())));
                let conclusion = ProbFormula::Geq(qv, phi.clone());
                if prob_sat(&universe[mi], &premise)? && !prob_sat(&universe[mi], &conclusion)? {
                    return Ok(Some(format!("q={qv} phi={:?}", pool[i])));
                }
            }
        }
        Ok(None)
    })?;

    sweep("additivity-lower", &mut |_, t, n| {
        for i in 0..f {
            for j in 0..f {
                for &pv in &qs {
                    for &qv in &qs {
                        for &rv in &qs {
                            let s = pv + qv - rv;
                            if s < Rational64::zero() || s > Rational64::one() {
                                continue;
                            }
                            *n += 1;
                            let premise = t.base(i) >= q_up(pv)? && t.base(j) >= q_up(qv)?;
                            let conclusion =
                                t.or(i, j) >= q_up(s)? || t.and(i, j) >= q_up(rv)?;
                            if premise && !conclusion {
                                return Ok(Some(format!(
                                    "p={pv} q={qv} r={rv} phi={:?} psi={:?}",
                                    pool[i], pool[j]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    })?;

    sweep("additivity-upper", &mut |_, t, n| {
        for i in 0..f {
            for j in 0..f {
                for &pv in &qs {
                    for &qv in &qs {
                        for &rv in &qs {
                            let s = pv + qv - rv;
                            if s < Rational64::zero() || s > Rational64::one() {
                                continue;
                            }
                            *n += 1;
                            let premise =
                                t.or(i, j) >= q_up(s)? && t.and(i, j) >= q_up(rv)?;
                            let conclusion = t.base(i) >= q_up(pv)? || t.base(j) >= q_up(qv)?;
                            if premise && !conclusion {
                                return Ok(Some(format!(
                                    "p={pv} q={qv} r={rv} phi={:?} psi={:?}",
                                    pool[i], pool[j]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    })?;

    Ok(reports)
}

/// The standard measure universe for rule sweeps: one measure per
/// enumerated structure (up to isomorphism), plus every synthetic
/// normalized measure whose atom values lie on the grade grid.
pub fn rule_universe(
    sig: &Signature,
    max_size: usize,
    pool: &[FoFormula],
    window: usize,
    grid_denominator: i64,
    caps: &Caps,
) -> Result<Vec<GammaMeasure>, GammaError> {
    let structures = enumerate_structures(sig, max_size, &[], true, caps)?;
    let mut universe = Vec::new();
    for which in 0..structures.len() {
        universe.push(measure_of(&structures, which, pool, window, caps)?);
    }
    if let Some(template) = universe.first() {
        let atoms = template.algebra().blocks.len();
        let space = template.space().clone();
        let sub = template.algebra().clone();
        for parts in compositions(grid_denominator, atoms) {
            let values: Vec<GammaValue> = parts
                .iter()
                .map(|&a| GammaValue::up(Rational64::new(a, grid_denominator)).unwrap())
                .collect();
            // Skip duplicates of structure measures; the constructor
            // re-validates normalization.
            universe.push(GammaMeasure::new(space.clone(), sub.clone(), values)?);
        }
    }
    Ok(universe)
}

/// All vectors of `parts` nonnegative integers summing to `total`.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for head in 0..=total {
        for mut tail in compositions(total - head, parts - 1) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
