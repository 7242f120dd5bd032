//! Text grammar for polynomials.
//!
//! ```text
//! expr    = term { ("+" | "-") term }
//! term    = unary { ("*" | "/") unary }
//! unary   = { "+" | "-" } power
//! power   = atom [ ("^" | "**") integer ]
//! atom    = integer | "i" | variable | "(" expr ")"
//! variable = "z" integer          (1-based; a bare "z" is allowed when d = 1)
//! ```
//!
//! Division is allowed only by nonzero constants, so `3/2*z1` and `z1/(1+i)`
//! parse but `1/z1` does not. Decimal literals are rejected: coefficients
//! live in `Q(i)` and must be written exactly.

use rug::Integer;

use super::gaussian::GaussianRational;
use super::polynomial::MultiPolynomial;
use crate::error::{Error, Result};

pub fn parse(text: &str, dim: usize) -> Result<MultiPolynomial> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, dim };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { position: self.pos, message: message.to_string() }
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

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = &acc + &self.term()?;
            } else if self.eat("-") {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPolynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.peek() == Some(b'*') && self.src.get(self.pos + 1) != Some(&b'*') {
                self.pos += 1;
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.unary()?;
                if !d.is_constant() {
                    return Err(Error::Parse { position: at, message: "division by a non-constant".into() });
                }
                let c = d.constant_term();
                if c.is_zero() {
                    return Err(Error::Parse { position: at, message: "division by zero".into() });
                }
                acc = acc.scale(&c.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPolynomial> {
        if self.eat("-") {
            return Ok(-&self.unary()?);
        }
        if self.eat("+") {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPolynomial> {
        let base = self.atom()?;
        if self.eat("^") || self.eat("**") {
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e = e.to_u32().filter(|&e| e <= 1000).ok_or(Error::Parse {
                position: at,
                message: "exponent must be an integer in 0..=1000".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Integer> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse::<Integer>().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MultiPolynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(")") {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.src.get(self.pos) == Some(&b'.') || self.src.get(self.pos) == Some(&b'e') {
                    return Err(self.error("floating-point literals are not accepted; write coefficients as exact fractions"));
                }
                Ok(MultiPolynomial::constant(self.dim, GaussianRational::from(rug::Rational::from(n))))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(MultiPolynomial::constant(self.dim, GaussianRational::i()))
            }
            Some(b'z') => {
                let at = self.pos;
                self.pos += 1;
                let digits = self.src.get(self.pos).is_some_and(u8::is_ascii_digit);
                let index = if digits {
                    self.integer()?.to_usize().unwrap_or(usize::MAX)
                } else if self.dim == 1 {
                    1
                } else {
                    return Err(Error::Parse { position: at, message: "bare `z` is only allowed when d = 1".into() });
                };
                if index == 0 {
                    return Err(Error::Parse { position: at, message: "variables are numbered from z1".into() });
                }
                if index > self.dim {
                    return Err(Error::VariableOutOfRange { index, dim: self.dim });
                }
                Ok(MultiPolynomial::var(self.dim, index - 1))
            }
            Some(b'.') => Err(self.error("floating-point literals are not accepted; write coefficients as exact fractions")),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
