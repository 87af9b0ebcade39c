//! Parser for rational-function expressions such as `(1 + x*y^2)/(3/2 - z^-1)`.
//!
//! Grammar: sums of products of powers; `^` takes a signed integer; names
//! are `[A-Za-z_][A-Za-z0-9_]*`; juxtaposition is not multiplication.

use num_bigint::BigInt;

use super::mpoly::MPoly;
use super::ratfun::RatFun;
use super::ring::Rational;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.src)))
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

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.div(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return base.powi(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFun::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(RatFun::var(name))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parse an expression into a normalized rational function.
pub fn parse_ratfun(s: &str) -> Result<RatFun> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parse an expression that must be a Laurent polynomial.
pub fn parse_mpoly(s: &str) -> Result<MPoly> {
    let r = parse_ratfun(s)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("not a Laurent polynomial: {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polynomials() {
        let p = parse_mpoly("1+z*y+z*x*y+y+z*y^2+z^2*y^2+z^2*y^3").unwrap();
        assert_eq!(p.nterms(), 7);
        assert_eq!(parse_mpoly(&p.to_string()).unwrap(), p);
        assert_eq!(parse_mpoly("-x^-2 + 3/2*y").unwrap().to_string(), "-x^-2 + 3/2*y");
        assert_eq!(parse_mpoly("(1+l)^3").unwrap().nterms(), 4);
    }

    #[test]
    fn parses_fractions() {
        let r = parse_ratfun("(x^2-y^2)/(x-y)").unwrap();
        assert_eq!(r, parse_ratfun("x+y").unwrap());
        let r = parse_ratfun("1/(1-g)").unwrap();
        assert_eq!(parse_ratfun(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfun("x +").is_err());
        assert!(parse_ratfun("x y").is_err());
        assert!(parse_ratfun("1/0").is_err());
        assert!(parse_mpoly("1/(1+x)").is_err());
    }
}
