//! Module expressions, the CLI's input syntax for modules.
//!
//! A sum of atoms with positive multiplicities. With a cyclic ring context,
//! atoms are `x^a` (the cyclic module with part a; bare `x` is a = 1) with
//! multiplicity written `*k`, plus `R` for the free module when the modulus
//! is finite. With an (A_n) ring context, atoms are `R`, `I<j>`, and - for
//! n = 2 only - the aliases `p` and `q` for I_1 and I_2. Named atoms take
//! multiplicity `^k` or `*k`. `0` is the zero module.
//!
//! Printing is the Display impl of the module types; parse(print(m)) = m,
//! and printing a parse canonicalizes.

use crate::an::{ANModule, ANRing};
use crate::cyclic::{CyclicModule, Modulus};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Which ring the expression's atoms are read against.
#[derive(Clone, Debug, PartialEq)]
pub enum RingContext {
    Cyclic(Modulus),
    An(ANRing),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParsedModule {
    Cyclic(CyclicModule),
    An(ANModule),
}

impl ParsedModule {
    pub fn into_cyclic(self) -> Option<CyclicModule> {
        match self {
            ParsedModule::Cyclic(m) => Some(m),
            ParsedModule::An(_) => None,
        }
    }

    pub fn into_an(self) -> Option<ANModule> {
        match self {
            ParsedModule::An(m) => Some(m),
            ParsedModule::Cyclic(_) => None,
        }
    }
}

pub fn parse_module(text: &str, ctx: &RingContext) -> Result<ParsedModule> {
    let mut p = ExprParser {
        bytes: text.as_bytes(),
        pos: 0,
        ctx,
        parts: Vec::new(),
        free: 0,
        ideal: match ctx {
            RingContext::An(ring) => vec![0; ring.n() as usize],
            RingContext::Cyclic(_) => Vec::new(),
        },
    };
    p.parse()?;
    match ctx {
        RingContext::Cyclic(modulus) => Ok(ParsedModule::Cyclic(CyclicModule::new(
            *modulus,
            Partition::new(p.parts),
        )?)),
        RingContext::An(ring) => Ok(ParsedModule::An(ANModule::new(
            ring.clone(),
            p.free,
            p.ideal,
        )?)),
    }
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ctx: &'a RingContext,
    parts: Vec<u64>,
    free: u64,
    ideal: Vec<u64>,
}

impl<'a> ExprParser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
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

    fn parse(&mut self) -> Result<()> {
        // the zero module is the literal 0
        if self.peek() == Some(b'0') {
            self.pos += 1;
            self.skip_ws();
            if self.pos != self.bytes.len() {
                return Err(self.err("unexpected input after 0"));
            }
            return Ok(());
        }
        self.parse_term()?;
        while self.eat(b'+') {
            self.parse_term()?;
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(())
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
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

    fn parse_ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an atom"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .to_string())
    }

    fn parse_term(&mut self) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return Err(self.err("expected an atom")),
        }
        let at_atom = self.pos;
        let ident = self.parse_ident()?;

        // cyclic atom: x or x^a, multiplicity only via *k
        if ident == "x" {
            let RingContext::Cyclic(_) = self.ctx else {
                self.pos = at_atom;
                return Err(self.err("cyclic atom x is not valid for an (A_n) ring"));
            };
            let part = if self.eat(b'^') { self.parse_uint()? } else { 1 };
            if part == 0 {
                return Err(self.err("part must be positive"));
            }
            let mult = self.parse_multiplicity()?;
            self.parts
                .extend(std::iter::repeat(part).take(mult as usize));
            return Ok(());
        }

        match (&ident[..], self.ctx) {
            ("R", RingContext::Cyclic(Modulus::Finite(m))) => {
                let m = *m;
                let mult = self.parse_multiplicity()?;
                self.parts.extend(std::iter::repeat(m).take(mult as usize));
                Ok(())
            }
            ("R", RingContext::Cyclic(Modulus::Infinite)) => {
                self.pos = at_atom;
                Err(self.err("R is not a finite-length module over k[[x]]"))
            }
            ("R", RingContext::An(_)) => {
                self.free += self.parse_multiplicity()?;
                Ok(())
            }
            ("p", RingContext::An(ring)) | ("q", RingContext::An(ring)) => {
                if ring.n() != 2 {
                    self.pos = at_atom;
                    return Err(self.err(format!(
                        "aliases p and q exist only for n = 2 (here n = {})",
                        ring.n()
                    )));
                }
                let j = if ident == "p" { 1 } else { 2 };
                let mult = self.parse_multiplicity()?;
                self.ideal[j - 1] += mult;
                Ok(())
            }
            (_, RingContext::An(ring)) if ident.starts_with('I') => {
                let j: u64 = ident[1..]
                    .parse()
                    .map_err(|_| self.err(format!("unknown atom {ident}")))?;
                if j < 1 || j > ring.n() {
                    self.pos = at_atom;
                    return Err(Error::IndexExceedsN { index: j, n: ring.n() });
                }
                let mult = self.parse_multiplicity()?;
                self.ideal[(j - 1) as usize] += mult;
                Ok(())
            }
            _ => {
                self.pos = at_atom;
                Err(self.err(format!("unknown atom {ident}")))
            }
        }
    }

    fn parse_multiplicity(&mut self) -> Result<u64> {
        if self.eat(b'^') || self.eat(b'*') {
            let k = self.parse_uint()?;
            if k == 0 {
                return Err(self.err("multiplicity must be positive"));
            }
            Ok(k)
        } else {
            Ok(1)
        }
    }
}
