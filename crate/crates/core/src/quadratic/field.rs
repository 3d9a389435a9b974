//! Elements `x + y√m` of a quadratic field, `m` squarefree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    m: i64,
    x: Rational,
    y: Rational,
}

impl QuadElem {
    pub fn new(m: i64, x: Rational, y: Rational) -> QuadElem {
        QuadElem { m, x, y }
    }

    pub fn rational(m: i64, x: Rational) -> QuadElem {
        QuadElem { m, x, y: Rational::zero() }
    }

    pub fn zero(m: i64) -> QuadElem {
        Self::rational(m, Rational::zero())
    }

    pub fn one(m: i64) -> QuadElem {
        Self::rational(m, Rational::one())
    }

    /// `√m`.
    pub fn root(m: i64) -> QuadElem {
        QuadElem { m, x: Rational::zero(), y: Rational::one() }
    }

    pub fn radicand(&self) -> i64 {
        self.m
    }
    pub fn x(&self) -> &Rational {
        &self.x
    }
    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem { m: self.m, x: self.x.clone(), y: -&self.y }
    }

    /// Field norm `x² − m y²`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x - Rational::from_integer(BigInt::from(self.m)) * &self.y * &self.y
    }

    pub fn inv(&self) -> Option<QuadElem> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadElem { m: self.m, x: &self.x / &n, y: -&self.y / &n })
    }

    pub fn scale(&self, q: &Rational) -> QuadElem {
        QuadElem { m: self.m, x: &self.x * q, y: &self.y * q }
    }

    /// Parses `a`, `a+b*sqrt(n)`, `sqrt(n)`, `(…)` and sums/differences of
    /// such terms. `sqrt(n)` must be a rational multiple of `√m`; `i` is
    /// accepted for `sqrt(-1)`.
    pub fn parse(m: i64, s: &str) -> Result<QuadElem> {
        let mut p = ElemParser { s: s.as_bytes(), pos: 0, m };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }
}

fn same_field(a: &QuadElem, b: &QuadElem) {
    assert_eq!(a.m, b.m, "elements of different quadratic fields");
}

impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        same_field(self, o);
        QuadElem { m: self.m, x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        same_field(self, o);
        QuadElem { m: self.m, x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        same_field(self, o);
        let m = Rational::from_integer(BigInt::from(self.m));
        QuadElem {
            m: self.m,
            x: &self.x * &o.x + m * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { m: self.m, x: -&self.x, y: -&self.y }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.m);
        if self.y.is_zero() {
            return write!(f, "{}", format_rational(&self.x));
        }
        if !self.x.is_zero() {
            write!(f, "{}", format_rational(&self.x))?;
            if self.y.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.y.is_one() {
            write!(f, "{root}")
        } else if (-&self.y).is_one() {
            write!(f, "-{root}")
        } else {
            write!(f, "{}*{root}", format_rational(&self.y))
        }
    }
}

pub(crate) struct ElemParser<'a> {
    pub(crate) s: &'a [u8],
    pub(crate) pos: usize,
    pub(crate) m: i64,
}

impl<'a> ElemParser<'a> {
    pub(crate) fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    /// `term (('+'|'-') term)*` with an optional leading sign.
    pub(crate) fn sum(&mut self) -> Result<QuadElem> {
        let mut acc = QuadElem::zero(self.m);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            let t = self.product()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
        }
        Ok(acc)
    }

    pub(crate) fn product(&mut self) -> Result<QuadElem> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let a = self.atom()?;
                    acc = &acc * &a;
                }
                // juxtaposition such as `3sqrt(2)` or `2i`
                Some(b's') | Some(b'i') | Some(b'(') => {
                    let a = self.atom()?;
                    acc = &acc * &a;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<QuadElem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(")") {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b's') => {
                if !self.eat("sqrt(") {
                    return Err(self.err("expected sqrt("));
                }
                let start = self.pos;
                let n = self.integer()?;
                if !self.eat(")") {
                    return Err(self.err("expected ')'"));
                }
                self.sqrt_of(n.clone()).ok_or_else(|| Error::Parse { pos: start, msg: format!("sqrt({n}) is not in the field") })
            }
            Some(b'i') => {
                let start = self.pos;
                self.pos += 1;
                self.sqrt_of(BigInt::from(-1)).ok_or(Error::Parse { pos: start, msg: "i is not in the field".into() })
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let q = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(QuadElem::rational(self.m, q))
            }
            _ => Err(self.err("expected a number, sqrt(n) or '('")),
        }
    }

    pub(crate) fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<BigInt>().ok())
            .ok_or(Error::Parse { pos: start, msg: "expected an integer".into() })
    }

    /// `√n` as `r√m`, when `n/m` is a rational square.
    fn sqrt_of(&self, n: BigInt) -> Option<QuadElem> {
        if n.is_zero() {
            return Some(QuadElem::zero(self.m));
        }
        let m = BigInt::from(self.m);
        if (&n * &m).is_negative() || !(&n % &m).is_zero() {
            return None;
        }
        let r2 = &n / &m;
        let r = r2.sqrt();
        if &r * &r != r2 {
            return None;
        }
        Some(QuadElem::new(self.m, Rational::zero(), Rational::from_integer(r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn arithmetic() {
        let a = QuadElem::new(-3, int(1), int(1));
        let b = a.conj();
        assert_eq!(&a * &b, QuadElem::rational(-3, int(4)));
        assert_eq!(a.norm(), int(4));
        assert_eq!(&a * &a.inv().unwrap(), QuadElem::one(-3));
    }

    #[test]
    fn parsing() {
        assert_eq!(QuadElem::parse(-3, "1+sqrt(-3)").unwrap(), QuadElem::new(-3, int(1), int(1)));
        assert_eq!(QuadElem::parse(-3, "1 - sqrt(-12)").unwrap(), QuadElem::new(-3, int(1), int(-2)));
        assert_eq!(QuadElem::parse(-1, "3/2 + 2i").unwrap(), QuadElem::new(-1, frac(3, 2), int(2)));
        assert_eq!(QuadElem::parse(10, "(1+sqrt(10))*(1-sqrt(10))").unwrap(), QuadElem::rational(10, int(-9)));
        assert_eq!(QuadElem::parse(-5, "-1/3sqrt(-5)").unwrap(), QuadElem::new(-5, int(0), frac(-1, 3)));
        assert!(QuadElem::parse(-3, "sqrt(2)").is_err());
        assert!(QuadElem::parse(-3, "1+").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["1+sqrt(-3)", "1/2-3/2*sqrt(-3)", "-sqrt(-3)", "7", "0"] {
            let e = QuadElem::parse(-3, s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(QuadElem::parse(-3, &e.to_string()).unwrap(), e);
        }
    }
}
