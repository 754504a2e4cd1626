//! Exact arithmetic: rationals, sparse polynomials, rational functions,
//! quadratic extensions and prime fields.

pub mod fp;
pub mod gcd;
mod heugcd;
pub mod parse;
pub mod poly;
pub mod quad;
pub mod ratfunc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub use fp::{legendre, Fp};
pub use gcd::{gcd, is_squarefree};
pub use poly::{Monomial, Poly};
pub use quad::{QuadExt, QuadField};
pub use ratfunc::RatFunc;

/// `Rational` from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n/d` as a `Rational`; panics on `d = 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `"n"` or `"n/d"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse { offset: 0, message: format!("not a rational number: `{s}`") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

fn bigint_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = num_integer::Roots::sqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Square root in Q, if the argument is a rational square.
pub fn rational_sqrt(c: &Rational) -> Option<Rational> {
    let n = bigint_sqrt(c.numer())?;
    let d = bigint_sqrt(c.denom())?;
    Some(Rational::new(n, d))
}

/// The arithmetic needed by generic algorithms such as the chord-tangent law.
///
/// Operations return `Result` because extension elements over different
/// fields must not mix.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero_elt(&self) -> bool;
    fn plus(&self, other: &Self) -> Result<Self>;
    fn minus(&self, other: &Self) -> Result<Self>;
    fn times(&self, other: &Self) -> Result<Self>;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self>;

    fn divide(&self, other: &Self) -> Result<Self> {
        self.times(&other.inverse()?)
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn int_like(&self, n: i64) -> Self {
        rat(n)
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn minus(&self, other: &Self) -> Result<Self> {
        Ok(self - other)
    }
    fn times(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn negated(&self) -> Self {
        -self.clone()
    }
    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("1.5").is_err());
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
    }
}
