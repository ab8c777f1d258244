//! Textual form of motivic values.
//!
//! Grammar (shared by the printer and the parser):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary | unary)*     juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ['^' exp]
//! exp    := ['-'] INT | '(' ['-'] INT ['/' INT] ')' | '{' ... '}'
//! atom   := INT | 'L' | 'infinity' | 'inf' | '(' expr ')'
//! ```
//!
//! Fractional exponents are only allowed on `L`. The printer writes a finite
//! value as `N/D` where `D` is the canonical denominator with its power of
//! `L` moved into `N` as negative exponents, e.g. `(L^-2+L^-1+1)/(L+1)`.
//! Terms are ordered by decreasing degree in `L`, except when every exponent
//! is non-positive, where they are ordered by decreasing degree in `L^-1`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::MotivicValue;
use crate::{Exponent, IntPoly};

pub const INFINITY_TOKEN: &str = "infinity";

fn fmt_exponent(e: Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

/// Renders `Σ c·L^e` following the ordering rule in the module docs.
fn fmt_laurent(terms: &[(BigInt, Exponent)]) -> String {
    let mut terms: Vec<_> = terms.iter().filter(|(c, _)| !c.is_zero()).cloned().collect();
    if terms.is_empty() {
        return "0".into();
    }
    if terms.iter().all(|(_, e)| *e <= Exponent::zero()) {
        terms.sort_by_key(|a| a.1);
    } else {
        terms.sort_by_key(|a| std::cmp::Reverse(a.1));
    }
    let mut out = String::new();
    for (i, (c, e)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        if e.is_zero() {
            write!(out, "{mag}").unwrap();
            continue;
        }
        if !mag.is_one() {
            write!(out, "{mag}").unwrap();
        }
        out.push('L');
        if !e.is_one() {
            write!(out, "^{}", fmt_exponent(*e)).unwrap();
        }
    }
    out
}

fn poly_terms(p: &IntPoly, root: u32) -> Vec<(BigInt, Exponent)> {
    p.terms()
        .map(|(i, c)| (c.clone(), Exponent::new(i as i64, root as i64)))
        .collect()
}

fn wrap(s: String, n_terms: usize) -> String {
    if n_terms > 1 {
        format!("({s})")
    } else {
        s
    }
}

fn fmt_fraction(num: &[(BigInt, Exponent)], den: &IntPoly, root: u32) -> String {
    let n = fmt_laurent(num);
    if den.is_one() {
        return n;
    }
    let dterms = poly_terms(den, root);
    let n_count = num.iter().filter(|(c, _)| !c.is_zero()).count();
    let n = wrap(n, n_count);
    format!("{}/{}", n, wrap(fmt_laurent(&dterms), dterms.len()))
}

impl fmt::Display for MotivicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.laurent_split() {
            None => f.write_str(INFINITY_TOKEN),
            Some((num, den, root)) => f.write_str(&fmt_fraction(&num, &den, root)),
        }
    }
}

/// Denominator, root index and accumulated numerator terms.
type Group = (IntPoly, u32, Vec<(BigInt, Exponent)>);

/// Renders a sum of values without reducing across denominators: summands
/// sharing the same (split) denominator have their numerators added, and the
/// groups are joined with `+`. Groups appear in order of first occurrence.
pub fn render_sum(values: &[MotivicValue]) -> String {
    if values.iter().any(MotivicValue::is_infinite) {
        return INFINITY_TOKEN.into();
    }
    let mut groups: Vec<Group> = Vec::new();
    for v in values {
        let (num, den, root) = v.laurent_split().expect("finite");
        match groups.iter_mut().find(|(d, r, _)| *d == den && *r == root) {
            Some((_, _, acc)) => {
                for (c, e) in num {
                    match acc.iter_mut().find(|(_, e2)| *e2 == e) {
                        Some((c2, _)) => *c2 += c,
                        None => acc.push((c, e)),
                    }
                }
            }
            None => groups.push((den, root, num)),
        }
    }
    let parts: Vec<String> = groups
        .iter()
        .map(|(d, r, n)| fmt_fraction(n, d, *r))
        .filter(|s| s != "0")
        .collect();
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if !p.starts_with('-') {
            out.push('+');
        }
        out.push_str(p);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    L,
    Inf,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(s[start..i].parse().unwrap())));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word = &s[start..i];
                let tok = match word {
                    "L" => Tok::L,
                    "inf" | "infinity" => Tok::Inf,
                    _ => {
                        return Err(Error::Parse {
                            pos: start,
                            msg: format!("unknown symbol `{word}`"),
                        })
                    }
                };
                out.push((start, tok));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", s[i..].chars().next().unwrap()),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {t:?}"))
        }
    }

    fn lift(&self, r: Result<MotivicValue>) -> Result<MotivicValue> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                pos: self.offset(),
                msg: other.to_string(),
            },
        })
    }

    fn expr(&mut self) -> Result<MotivicValue> {
        let neg = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = self.lift(MotivicValue::zero().checked_sub(&acc))?;
        }
        loop {
            if self.eat(&Tok::Plus) {
                let t = self.term()?;
                acc = self.lift(acc.checked_add(&t))?;
            } else if self.eat(&Tok::Minus) {
                let t = self.term()?;
                acc = self.lift(acc.checked_sub(&t))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MotivicValue> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                let u = self.unary()?;
                acc = self.lift(acc.checked_mul(&u))?;
            } else if self.eat(&Tok::Slash) {
                let u = self.unary()?;
                acc = self.lift(acc.checked_div(&u))?;
            } else if matches!(self.peek(), Some(Tok::Int(_) | Tok::L | Tok::Inf | Tok::LParen)) {
                let u = self.unary()?;
                acc = self.lift(acc.checked_mul(&u))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MotivicValue> {
        if self.eat(&Tok::Minus) {
            let u = self.unary()?;
            return self.lift(MotivicValue::zero().checked_sub(&u));
        }
        self.power()
    }

    fn power(&mut self) -> Result<MotivicValue> {
        let is_l = self.peek() == Some(&Tok::L);
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let e = self.exponent()?;
        if is_l {
            Ok(MotivicValue::lpow(e))
        } else if e.is_integer() {
            self.lift(base.pow(*e.numer()))
        } else {
            self.err("fractional exponents are only allowed on L")
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                i64::try_from(n).or_else(|_| self.err("exponent out of range"))
            }
            _ => self.err("expected integer"),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        if self.eat(&Tok::Minus) {
            Ok(-self.int()?)
        } else {
            self.int()
        }
    }

    fn exponent(&mut self) -> Result<Exponent> {
        let close = if self.eat(&Tok::LParen) {
            Some(Tok::RParen)
        } else if self.eat(&Tok::LBrace) {
            Some(Tok::RBrace)
        } else {
            None
        };
        let n = self.signed_int()?;
        let Some(close) = close else {
            return Ok(Exponent::from_integer(n));
        };
        let d = if self.eat(&Tok::Slash) { self.int()? } else { 1 };
        if d == 0 {
            return self.err("zero exponent denominator");
        }
        self.expect(close)?;
        Ok(Exponent::new(n, d))
    }

    fn atom(&mut self) -> Result<MotivicValue> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(MotivicValue::from_terms(&[(n, Exponent::zero())]))
            }
            Some(Tok::L) => {
                self.pos += 1;
                Ok(MotivicValue::lefschetz())
            }
            Some(Tok::Inf) => {
                self.pos += 1;
                Ok(MotivicValue::infinity())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for MotivicValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty expression".into(),
            });
        }
        let mut p = Parser {
            toks,
            pos: 0,
            end: s.len(),
        };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return p.err("trailing input");
        }
        Ok(v)
    }
}

impl serde::Serialize for MotivicValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for MotivicValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => Ok(MotivicValue::integer(k)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
