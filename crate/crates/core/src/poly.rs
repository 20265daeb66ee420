//! Exact multivariate polynomials with Gaussian-rational coefficients.
//!
//! Terms map exponent vectors (named variables) to nonzero coefficients.
//! Exponents are signed: ordinary polynomials never go negative, but unit
//! reduction of matrices divides by monomials in declared-invertible
//! variables, which produces Laurent exponents in exactly those variables.
//!
//! The text form is what the CLI and the JSON matrix encoding use:
//! `x+t*y`, `x^2-t^2*y^2`, `(0+1i)*z`, `1/2*x`, `t^-2*x^2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;

/// An exponent vector; zero exponents are never stored.
pub type Monomial = BTreeMap<String, i64>;

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(GaussRational::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Poly::term(
            GaussRational::one(),
            [(name.to_string(), 1)].into_iter().collect(),
        )
    }

    pub fn term(coeff: GaussRational, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            let mono: Monomial = mono.into_iter().filter(|&(_, e)| e != 0).collect();
            terms.insert(mono, coeff);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The single (monomial, coefficient) pair, if this is a monomial.
    pub fn as_single_term(&self) -> Option<(&Monomial, &GaussRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The term with the largest monomial in the term order.
    pub fn leading_term(&self) -> Option<(&Monomial, &GaussRational)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.keys().cloned())
            .collect()
    }

    fn add_term(&mut self, mono: Monomial, coeff: GaussRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Multiplies by the single term `coeff * mono` (exponents add; negative
    /// exponents are how localization-by-units divides).
    pub fn mul_term(&self, coeff: &GaussRational, mono: &Monomial) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut prod = m.clone();
            for (v, e) in mono {
                let entry = prod.entry(v.clone()).or_insert(0);
                *entry += e;
                if *entry == 0 {
                    prod.remove(v);
                }
            }
            out.add_term(prod, c * coeff);
        }
        out
    }

    pub fn pow(&self, exp: i64) -> Poly {
        if exp < 0 {
            let (mono, coeff) = self
                .as_single_term()
                .expect("negative powers only apply to monomials");
            let inv_mono: Monomial = mono.iter().map(|(v, e)| (v.clone(), -e)).collect();
            return Poly::term(coeff.recip(), inv_mono).pow(-exp);
        }
        let mut out = Poly::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Entry point for substitution: replaces `var` by `value` everywhere.
    /// A variable absent from the polynomial leaves it unchanged. Panics on
    /// Laurent exponents of `var` (those never reach substitution).
    pub fn substitute(&self, var: &str, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (mono, coeff) in &self.terms {
            match mono.get(var) {
                None => out = &out + &Poly::term(coeff.clone(), mono.clone()),
                Some(&e) => {
                    assert!(e >= 0, "cannot substitute into a negative exponent");
                    let mut rest = mono.clone();
                    rest.remove(var);
                    let piece = Poly::term(coeff.clone(), rest);
                    out = &out + &(&piece * &value.pow(e));
                }
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &rhs.terms {
            let partial = self.mul_term(c, m);
            for (pm, pc) in partial.terms {
                out.add_term(pm, pc);
            }
        }
        out
    }
}

fn render_monomial(mono: &Monomial) -> String {
    mono.iter()
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn render_term(mono: &Monomial, coeff: &GaussRational) -> String {
    if mono.is_empty() {
        return coeff.to_string();
    }
    let mono_s = render_monomial(mono);
    if coeff.is_one() {
        mono_s
    } else if coeff.is_real() && (-coeff).is_one() {
        format!("-{mono_s}")
    } else {
        format!("{coeff}*{mono_s}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending monomial order, constants last
        for (k, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let s = render_term(mono, coeff);
            if k == 0 {
                write!(f, "{s}")?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, "-{rest}")?;
            } else {
                write!(f, "+{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        let mut parser = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let poly = parser.parse_expr()?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(parser.err("unexpected trailing input"));
        }
        Ok(poly)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Recursive-descent parser for the polynomial text form.
///
/// expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
/// factor := '-' factor | primary ('^' int)? ; primary := number | ident |
/// '(' expr ')'. The identifier `i` is the imaginary unit; a number directly
/// suffixed with `i` (as in `(0+1i)`) is an imaginary literal.
struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_expr(&mut self) -> Result<Poly> {
        let mut acc = self.parse_term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.parse_term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.parse_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let mut acc = self.parse_factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.parse_factor()?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Poly> {
        if self.eat(b'-') {
            return Ok(-&self.parse_factor()?);
        }
        let base = self.parse_primary()?;
        if self.eat(b'^') {
            let exp = self.parse_int()?;
            if exp < 0 && base.as_single_term().is_none() {
                return Err(self.err("negative power of a non-monomial"));
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn parse_primary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.parse_number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.parse_ident();
                if name == "i" {
                    Ok(Poly::constant(GaussRational::i()))
                } else {
                    Ok(Poly::var(&name))
                }
            }
            Some(_) => Err(self.err("expected a number, variable, or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse_ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .to_string()
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn parse_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        self.skip_ws();
        let n = self.parse_uint()?;
        let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -n } else { n })
    }

    fn parse_number(&mut self) -> Result<Poly> {
        let numer = self.parse_uint()?;
        let mut value = BigRational::from(numer);
        if self.bytes.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let denom = self.parse_uint()?;
            if denom.is_zero() {
                return Err(self.err("zero denominator"));
            }
            value /= BigRational::from(denom);
        }
        // a number directly followed by `i` is an imaginary literal
        let imaginary = self.bytes.get(self.pos) == Some(&b'i')
            && !self
                .bytes
                .get(self.pos + 1)
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
        let coeff = if imaginary {
            self.pos += 1;
            GaussRational::new(BigRational::zero(), value)
        } else {
            GaussRational::new(value, BigRational::zero())
        };
        Ok(Poly::constant(coeff))
    }
}
