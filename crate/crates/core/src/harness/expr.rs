//! A small language for sums of `A`, `A - A` and their elementwise squares.
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := atom ['^2'] [('x' | '*') N]
//!        | ('Delta' | 'Δ') '(A^' N ')' [('x' | '*') M]
//! atom  := 'A' | '(A)' | 'A-A' | '(A-A)'
//! ```
//!
//! Whitespace is ignored; `−`, `×` and `²` are accepted as spellings of
//! `-`, `x` and `^2`. `Delta(A^d)` abbreviates `(A-A)^2 xd`. Squaring a
//! difference needs parentheses: `A-A^2` is rejected.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{difference_set, iterated_sumset, square_set, sumset, FpSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Base {
    A,
    Difference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub base: Base,
    pub squared: bool,
    pub reps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumExpression {
    terms: Vec<Term>,
}

impl SumExpression {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidExpression("no terms".into()));
        }
        if terms.iter().any(|t| t.reps == 0) {
            return Err(Error::InvalidExpression("repetition count 0".into()));
        }
        Ok(SumExpression { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `Delta(A^d)`, i.e. `(A-A)^2 xd`.
    pub fn distance(d: usize) -> Result<Self> {
        SumExpression::new(vec![Term {
            base: Base::Difference,
            squared: true,
            reps: d,
        }])
    }

    /// `(A-A)^2 x diff_reps + A^2 x square_reps`.
    pub fn mixed(diff_reps: usize, square_reps: usize) -> Result<Self> {
        SumExpression::new(vec![
            Term {
                base: Base::Difference,
                squared: true,
                reps: diff_reps,
            },
            Term {
                base: Base::A,
                squared: true,
                reps: square_reps,
            },
        ])
    }

    /// Total number of summands once repetitions are expanded.
    pub fn summands(&self) -> usize {
        self.terms.iter().map(|t| t.reps).sum()
    }
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '−' | '–' => '-',
            '×' => 'x',
            other => other,
        })
        .collect::<String>()
        .replace('²', "^2")
        .replace('Δ', "Delta")
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidExpression(msg.into())
}

fn parse_count(s: &str, ctx: &str) -> Result<usize> {
    let n: usize = s
        .parse()
        .map_err(|_| bad(format!("expected a count in {ctx:?}, got {s:?}")))?;
    if n == 0 {
        return Err(bad(format!("repetition count 0 in {ctx:?}")));
    }
    Ok(n)
}

/// Splits a trailing `xN` / `*N` repetition off a term.
fn split_reps<'a>(term: &'a str, ctx: &str) -> Result<(&'a str, usize)> {
    match term.rfind(['x', '*']) {
        Some(i) if term[i + 1..].chars().all(|c| c.is_ascii_digit()) => {
            Ok((&term[..i], parse_count(&term[i + 1..], ctx)?))
        }
        _ => Ok((term, 1)),
    }
}

fn parse_term(raw: &str) -> Result<Term> {
    if raw.is_empty() {
        return Err(bad("empty term"));
    }
    let (body, reps) = split_reps(raw, raw)?;
    if let Some(inner) = body.strip_prefix("Delta(A^").and_then(|r| r.strip_suffix(')')) {
        let d = parse_count(inner, raw)?;
        return Ok(Term {
            base: Base::Difference,
            squared: true,
            reps: d * reps,
        });
    }
    let (atom, squared) = match body.strip_suffix("^2") {
        Some(a) => (a, true),
        None => (body, false),
    };
    let base = match atom {
        "A" | "(A)" => Base::A,
        "(A-A)" => Base::Difference,
        "A-A" if !squared => Base::Difference,
        "A-A" => return Err(bad(format!("ambiguous {raw:?}: write (A-A)^2"))),
        _ => return Err(bad(format!("unknown term {raw:?}"))),
    };
    Ok(Term {
        base,
        squared,
        reps,
    })
}

impl FromStr for SumExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = normalize(s);
        if norm.is_empty() {
            return Err(bad("empty expression"));
        }
        let terms = norm.split('+').map(parse_term).collect::<Result<Vec<_>>>()?;
        SumExpression::new(terms)
    }
}

impl fmt::Display for SumExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (t.base, t.squared) {
                (Base::A, false) => f.write_str("A")?,
                (Base::A, true) => f.write_str("A^2")?,
                (Base::Difference, false) => f.write_str("(A-A)")?,
                (Base::Difference, true) => f.write_str("(A-A)^2")?,
            }
            if t.reps > 1 {
                write!(f, " x{}", t.reps)?;
            }
        }
        Ok(())
    }
}

impl Serialize for SumExpression {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SumExpression {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Evaluates the expression on `A` by composing difference sets, squares
/// and iterated sumsets.
pub fn evaluate_expression(a: &FpSet, expr: &SumExpression) -> Result<FpSet> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut diff: Option<FpSet> = None;
    let mut acc: Option<FpSet> = None;
    for t in expr.terms() {
        let base = match t.base {
            Base::A => a.clone(),
            Base::Difference => match &diff {
                Some(d) => d.clone(),
                None => {
                    let d = difference_set(a)?;
                    diff = Some(d.clone());
                    d
                }
            },
        };
        let base = if t.squared { square_set(&base) } else { base };
        let part = iterated_sumset(&base, t.reps)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => sumset(&prev, &part)?,
        });
    }
    acc.ok_or_else(|| bad("no terms"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageVerdict {
    pub expression: String,
    pub covered: bool,
    /// Elements of F_p the expression misses.
    pub missing: FpSet,
}

pub fn coverage(a: &FpSet, expr: &SumExpression) -> Result<CoverageVerdict> {
    let value = evaluate_expression(a, expr)?;
    let missing = value.complement();
    Ok(CoverageVerdict {
        expression: expr.to_string(),
        covered: missing.is_empty(),
        missing,
    })
}
