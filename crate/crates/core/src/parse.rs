//! Text form of polynomials.
//!
//! ```text
//! poly    ::= ['+'|'-'] term (('+'|'-') term)*
//! term    ::= item ('*' item)*
//! item    ::= rational | '(' rational ',' rational ')' | name '[' idx ']' ('^' exp)?
//! rational::= int ('/' posint)?
//! ```
//!
//! Conjugate symbols of a complex group `z` are written `zbar[j]`. The
//! formatter prints terms in canonical order, drops unit coefficients and
//! pulls the sign of real coefficients in front of the term.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::SparsePolynomial;
use crate::scalar::ExactScalar;
use crate::system::VariableSystem;

pub fn parse_poly(system: &Arc<VariableSystem>, text: &str) -> Result<SparsePolynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        system,
    };
    p.poly()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    system: &'a Arc<VariableSystem>,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn poly(&mut self) -> Result<SparsePolynomial> {
        let mut terms: Vec<(Monomial, ExactScalar)> = Vec::new();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None => break,
                Some(_) if first => false,
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            };
            first = false;
            let (m, c) = self.term()?;
            terms.push((m, if negative { -c } else { c }));
        }
        Ok(SparsePolynomial::from_terms(self.system, terms))
    }

    fn term(&mut self) -> Result<(Monomial, ExactScalar)> {
        let mut coeff = ExactScalar::one();
        let mut mono = Monomial::one();
        loop {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let re = self.rational()?;
                    self.expect(b',')?;
                    let im = self.rational()?;
                    self.expect(b')')?;
                    coeff = &coeff * &ExactScalar::new(re, im);
                }
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    coeff = coeff.scale(&r);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    mono = mono.mul(&self.factor()?);
                }
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
                None => return self.err("unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let num = self.unsigned()?;
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.unsigned()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            d
        } else {
            BigInt::one()
        };
        let r = BigRational::new(num, den);
        Ok(if negative { -r } else { r })
    }

    fn factor(&mut self) -> Result<Monomial> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name").to_string();
        self.expect(b'[')?;
        let idx_pos = self.pos;
        let idx = self.unsigned()?;
        self.expect(b']')?;
        let index1: usize = idx.try_into().map_err(|_| Error::Parse {
            position: idx_pos,
            message: "index too large".into(),
        })?;
        let sym = self.system.lookup(&name, index1).map_err(|_| Error::Parse {
            position: start,
            message: format!("unknown symbol `{name}[{index1}]`"),
        })?;
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.unsigned()?;
            u16::try_from(e).or_else(|_| self.err("exponent too large"))?
        } else {
            1
        };
        Ok(Monomial::var_pow(sym, exp))
    }
}

fn write_rational(out: &mut String, r: &BigRational) {
    if r.denom().is_one() {
        out.push_str(&r.numer().to_string());
    } else {
        out.push_str(&format!("{}/{}", r.numer(), r.denom()));
    }
}

/// Canonical text of a polynomial; `parse_poly` reads it back unchanged.
pub fn format_poly(p: &SparsePolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let mono = p.monomial_name(m);
        if c.is_real() {
            let r = c.re();
            if r.is_negative() {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let a = r.abs();
            if m.is_one() {
                write_rational(&mut out, &a);
            } else {
                if !a.is_one() {
                    write_rational(&mut out, &a);
                    out.push('*');
                }
                out.push_str(&mono);
            }
        } else {
            if i > 0 {
                out.push('+');
            }
            out.push_str(&c.to_string());
            if !m.is_one() {
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePolynomial[{}]({})", self.system(), format_poly(self))
    }
}
