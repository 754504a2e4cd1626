//! Text syntax: `+ - * / ^`, parentheses, integer literals, identifiers.
//! Juxtaposition multiplies (`2x`, `x(y+1)`); exponents may be negative for
//! rational functions.

use std::str::FromStr;

use num_bigint::BigInt;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
enum Expr {
    Num(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
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

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected an integer exponent");
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let e: i64 = match digits.parse() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }, at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Expr::Num(digits.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                Ok(Expr::Var(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").to_string()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn to_poly(e: &Expr) -> Result<Poly> {
    Ok(match e {
        Expr::Num(n) => Poly::constant(Rational::from_integer(n.clone())),
        Expr::Var(v) => Poly::var(v),
        Expr::Add(a, b) => to_poly(a)?.add(&to_poly(b)?),
        Expr::Sub(a, b) => to_poly(a)?.sub(&to_poly(b)?),
        Expr::Mul(a, b) => to_poly(a)?.mul(&to_poly(b)?),
        Expr::Neg(a) => to_poly(a)?.neg(),
        Expr::Div(a, b, at) => {
            let num = to_poly(a)?;
            let den = to_poly(b)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            match den.constant_value() {
                Some(c) => num.scale(&c.recip()),
                None => num.div_exact(&den).ok_or_else(|| Error::Parse {
                    offset: *at,
                    message: "quotient is not a polynomial".into(),
                })?,
            }
        }
        Expr::Pow(a, k, at) => {
            if *k < 0 {
                let base = to_poly(a)?;
                match base.constant_value() {
                    Some(c) if !num_traits::Zero::is_zero(&c) => Poly::constant(pow_rational(&c.recip(), k.unsigned_abs())),
                    _ => {
                        return Err(Error::Parse { offset: *at, message: "negative power of a polynomial".into() })
                    }
                }
            } else {
                to_poly(a)?.pow(*k as u32)
            }
        }
    })
}

fn pow_rational(c: &Rational, k: u64) -> Rational {
    num_traits::pow(c.clone(), k as usize)
}

fn to_ratfunc(e: &Expr) -> Result<RatFunc> {
    Ok(match e {
        Expr::Num(n) => RatFunc::constant(Rational::from_integer(n.clone())),
        Expr::Var(v) => RatFunc::var(v),
        Expr::Add(a, b) => to_ratfunc(a)?.add(&to_ratfunc(b)?),
        Expr::Sub(a, b) => to_ratfunc(a)?.sub(&to_ratfunc(b)?),
        Expr::Mul(a, b) => to_ratfunc(a)?.mul(&to_ratfunc(b)?),
        Expr::Neg(a) => to_ratfunc(a)?.neg(),
        Expr::Div(a, b, _) => to_ratfunc(a)?.div(&to_ratfunc(b)?)?,
        Expr::Pow(a, k, _) => to_ratfunc(a)?.pow(*k as i32)?,
    })
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        to_poly(&parse_expr(s)?)
    }
}

impl FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        to_ratfunc(&parse_expr(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_multiplication() {
        let a: Poly = "2x(x+1)".parse().unwrap();
        let b: Poly = "2*x^2 + 2*x".parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let a: Poly = "-x^2".parse().unwrap();
        assert_eq!(a, Poly::var("x").pow(2).neg());
    }

    #[test]
    fn round_trip() {
        for s in ["x*z*(x+1)*(z+1)*(x+z*t)", "-3/4*t + x^2*z", "0", "7"] {
            let p: Poly = s.parse().unwrap();
            assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        }
        for s in ["(x^2-1)/(2*t+6)", "-1/(x*z)", "y/(x^2*z^3)"] {
            let r: RatFunc = s.parse().unwrap();
            assert_eq!(r.to_string().parse::<RatFunc>().unwrap(), r);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        match "x + * y".parse::<Poly>() {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!("1/(x+1)".parse::<Poly>().is_err());
        assert!("(x".parse::<Poly>().is_err());
    }
}
