//! Boolean queries over (ring, ideal) pairs, used to search a corpus for
//! counterexamples.
//!
//! ```text
//! query := or
//! or    := and ("or" and)*
//! and   := unary ("and" unary)*
//! unary := "not" unary | "(" query ")" | atom
//! ```
//!
//! Atoms are predicate names (`completely_nilary`, `weakly_nilary`, ...) and
//! the facts `proper`, `zero`, `commutative`, `unital`, `nil` and
//! `prime_power_char`. `unital` means the ring has a unity distinct from zero.
//! A predicate that does not apply to the pair reads as false.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::classifier::{Classifier, ClassifyError, Judge, Predicate};
use crate::corpus::Corpus;
use crate::ideal::{is_nil, Ideal, IdealError, IdealKind};
use crate::ring::{characteristic, Element, RingError};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("query position {pos}: {msg}")]
pub struct QueryError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Error)]
pub enum HuntError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fact {
    Proper,
    Zero,
    Commutative,
    Unital,
    Nil,
    PrimePowerChar,
}

impl Fact {
    const ALL: [(&'static str, Fact); 6] = [
        ("proper", Fact::Proper),
        ("zero", Fact::Zero),
        ("commutative", Fact::Commutative),
        ("unital", Fact::Unital),
        ("nil", Fact::Nil),
        ("prime_power_char", Fact::PrimePowerChar),
    ];

    pub fn name(self) -> &'static str {
        Fact::ALL.iter().find(|(_, f)| *f == self).map(|(n, _)| *n).expect("listed")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Pred(Predicate),
    Fact(Fact),
    Not(Box<Query>),
    And(Box<Query>, Box<Query>),
    Or(Box<Query>, Box<Query>),
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Pred(p) => write!(f, "{p}"),
            Query::Fact(x) => f.write_str(x.name()),
            Query::Not(q) => write!(f, "not {q}"),
            Query::And(a, b) => write!(f, "({a} and {b})"),
            Query::Or(a, b) => write!(f, "({a} or {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Word(String),
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, QueryError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            '(' => {
                chars.next();
                out.push((pos, Token::Open));
            }
            ')' => {
                chars.next();
                out.push((pos, Token::Close));
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == '-' => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((pos, Token::Word(word)));
            }
            other => {
                return Err(QueryError { pos, msg: format!("unexpected character {other:?}") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Token::Word(w)) if w == kw) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Query, QueryError> {
        let mut q = self.and()?;
        while self.keyword("or") {
            q = Query::Or(Box::new(q), Box::new(self.and()?));
        }
        Ok(q)
    }

    fn and(&mut self) -> Result<Query, QueryError> {
        let mut q = self.unary()?;
        while self.keyword("and") {
            q = Query::And(Box::new(q), Box::new(self.unary()?));
        }
        Ok(q)
    }

    fn unary(&mut self) -> Result<Query, QueryError> {
        if self.keyword("not") {
            return Ok(Query::Not(Box::new(self.unary()?)));
        }
        let pos = self.pos();
        match self.tokens.get(self.at).map(|(_, t)| t.clone()) {
            Some(Token::Open) => {
                self.at += 1;
                let q = self.or()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(QueryError { pos: self.pos(), msg: "expected ')'".into() });
                }
                self.at += 1;
                Ok(q)
            }
            Some(Token::Word(w)) => {
                self.at += 1;
                atom(&w).ok_or_else(|| QueryError { pos, msg: format!("unknown atom {w:?}") })
            }
            Some(Token::Close) => Err(QueryError { pos, msg: "unexpected ')'".into() }),
            None => Err(QueryError { pos, msg: "unexpected end of query".into() }),
        }
    }
}

fn atom(word: &str) -> Option<Query> {
    if let Some((_, f)) = Fact::ALL.iter().find(|(n, _)| *n == word) {
        return Some(Query::Fact(*f));
    }
    if ["and", "or", "not"].contains(&word) {
        return None;
    }
    word.parse::<Predicate>().ok().map(Query::Pred)
}

impl FromStr for Query {
    type Err = QueryError;

    fn from_str(text: &str) -> Result<Query, QueryError> {
        let mut p = Parser { tokens: tokenize(text)?, at: 0, end: text.len() };
        let q = p.or()?;
        if p.at != p.tokens.len() {
            return Err(QueryError { pos: p.pos(), msg: "trailing input".into() });
        }
        Ok(q)
    }
}

/// Which ideals of each ring a hunt inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Target {
    /// Only the zero ideal, so ring-level predicates are queried.
    Zero,
    /// Every two-sided ideal.
    #[default]
    Any,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Target, String> {
        match s {
            "zero" => Ok(Target::Zero),
            "any" => Ok(Target::Any),
            other => Err(format!("unknown target {other:?} (expected zero or any)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HuntMatch {
    pub ring: String,
    pub ideal: Vec<Element>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HuntReport {
    pub query: String,
    pub pairs_checked: usize,
    pub matches: Vec<HuntMatch>,
}

pub fn evaluate(q: &Query, cx: &Classifier, i: &Ideal, judge: &dyn Judge) -> Result<bool, HuntError> {
    Ok(match q {
        Query::Pred(p) => {
            let v = judge.verdict(cx, i, *p)?;
            v.holds && !v.na
        }
        Query::Fact(f) => {
            let r = cx.ring();
            match f {
                Fact::Proper => i.is_proper(),
                Fact::Zero => i.is_zero(),
                Fact::Commutative => r.is_commutative(),
                Fact::Unital => r.one().is_some() && r.order() > 1,
                Fact::Nil => is_nil(&Ideal::full(r, IdealKind::TwoSided)).0,
                Fact::PrimePowerChar => characteristic(r)?.is_prime_power(),
            }
        }
        Query::Not(a) => !evaluate(a, cx, i, judge)?,
        Query::And(a, b) => evaluate(a, cx, i, judge)? && evaluate(b, cx, i, judge)?,
        Query::Or(a, b) => evaluate(a, cx, i, judge)? || evaluate(b, cx, i, judge)?,
    })
}

pub fn hunt(corpus: &Corpus, q: &Query, target: Target, judge: &dyn Judge) -> Result<HuntReport, HuntError> {
    let mut report = HuntReport { query: q.to_string(), pairs_checked: 0, matches: Vec::new() };
    for e in &corpus.entries {
        let cx = &e.classifier;
        let ideals: Vec<Ideal> = match target {
            Target::Zero => vec![cx.zero_ideal()],
            Target::Any => cx.lattice(IdealKind::TwoSided)?.ideals().to_vec(),
        };
        for i in &ideals {
            report.pairs_checked += 1;
            if evaluate(q, cx, i, judge)? {
                report.matches.push(HuntMatch { ring: cx.ring().label().to_string(), ideal: i.elements() });
            }
        }
    }
    Ok(report)
}
