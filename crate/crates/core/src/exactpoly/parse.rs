//! Text form of polynomials.
//!
//! Canonical output is a signed sum of terms in descending graded-lex order,
//! each term written `c*v1^e1*v2^e2` with unit coefficients and unit
//! exponents omitted. The parser accepts that grammar plus parentheses and
//! arbitrary whitespace, so `parse(format(p)) == p` for every `p`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::ring::Ring;
use super::Rational;
use crate::error::{Error, Result};

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = &self.ring().vars;
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(format_rational(&abs));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().map_err(|_| Error::Parse(text.clone()))?));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    1
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            let p = self.product()?;
            acc = if sign < 0 { &acc - &p } else { &acc + &p };
            first = false;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let p = self.power()?;
            acc = &acc * &p;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Minus) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.next() {
                Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?,
                other => return Err(Error::Parse(format!("expected exponent, got {other:?}"))),
            };
            let e = if neg { -e } else { e };
            return base.pow_signed(e).map_err(|err| match err {
                Error::LaurentUnsafe(s) => Error::Parse(format!("cannot invert {s} in this ring")),
                other => other,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Tok::Num(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if !d.is_zero() => Ok(Polynomial::constant(self.ring, Rational::new(n, d))),
                        other => Err(Error::Parse(format!("expected denominator, got {other:?}"))),
                    }
                } else {
                    Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => {
                let i = self.ring.index_of(&name).ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                Ok(Polynomial::var(self.ring, i))
            }
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    other => Err(Error::Parse(format!("expected ')', got {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl Polynomial {
    pub fn parse(ring: &Ring, text: &str) -> Result<Polynomial> {
        let toks = tokenize(text)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut p = Parser { toks, pos: 0, ring };
        let out = p.sum()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::ring::{RingContext, RingMode};

    #[test]
    fn formats_canonically() {
        let r = RingContext::new(RingMode::Affine, ["X1", "Y1"]).unwrap();
        let p = Polynomial::parse(&r, "(X1+Y1)*(X1-Y1)").unwrap();
        assert_eq!(p.to_string(), "X1^2 - Y1^2");
        let q = Polynomial::parse(&r, " - 3/6 * X1 + 2 ").unwrap();
        assert_eq!(q.to_string(), "-1/2*X1 + 2");
    }

    #[test]
    fn laurent_exponents() {
        let r = RingContext::new(RingMode::Laurent, ["x1", "x2"]).unwrap();
        let p = Polynomial::parse(&r, "(x1 + x1^-1)^2").unwrap();
        assert_eq!(p.to_string(), "x1^2 + 2 + x1^-2");
    }

    #[test]
    fn rejects_inverse_in_affine_ring() {
        let r = RingContext::new(RingMode::Affine, ["X1"]).unwrap();
        assert!(Polynomial::parse(&r, "X1^-1").is_err());
        assert!(Polynomial::parse(&r, "Z").is_err());
        assert!(Polynomial::parse(&r, "X1 +").is_err());
        assert!(Polynomial::parse(&r, "1/0").is_err());
    }

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-7", "3/4", "-22/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }
}
