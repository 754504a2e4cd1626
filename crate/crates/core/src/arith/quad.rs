//! Quadratic extensions `K(s)`, `s^2 = D`, of a rational function field `K`.

use std::fmt;
use std::sync::Arc;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::{rational_sqrt, Field, Rational};
use crate::error::{Error, Result};

/// The extension data: generator name and `D = s^2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadField {
    name: String,
    d: RatFunc,
}

impl QuadField {
    pub fn new(name: &str, d: RatFunc) -> Result<Arc<Self>> {
        if d.is_zero() {
            return Err(Error::Degenerate(format!("{name}^2 = 0")));
        }
        Ok(Arc::new(QuadField { name: name.to_string(), d }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d(&self) -> &RatFunc {
        &self.d
    }

    pub fn generator(self: &Arc<Self>) -> QuadExt {
        QuadExt { a0: RatFunc::zero(), a1: RatFunc::one(), field: Some(self.clone()) }
    }

    /// Reads a rational function in which the generator appears as a
    /// variable, reducing `s^2 -> D`.
    pub fn lift(self: &Arc<Self>, f: &RatFunc) -> Result<QuadExt> {
        if !f.uses_var(&self.name) {
            return Ok(QuadExt::base(f.clone()));
        }
        let num = self.lift_poly(f.num())?;
        let den = self.lift_poly(f.den())?;
        num.div(&den)
    }

    fn lift_poly(self: &Arc<Self>, p: &Poly) -> Result<QuadExt> {
        let coeffs = p.as_univariate(&self.name);
        let mut even = RatFunc::zero();
        let mut odd = RatFunc::zero();
        let mut dpow = RatFunc::one();
        for (k, c) in coeffs.iter().enumerate() {
            if k % 2 == 0 && k > 0 {
                dpow = dpow.mul(&self.d);
            }
            let term = RatFunc::from_poly(c.clone()).mul(&dpow);
            if k % 2 == 0 {
                even = even.add(&term);
            } else {
                odd = odd.add(&term);
            }
        }
        Ok(QuadExt { a0: even, a1: odd, field: Some(self.clone()) }.canonical())
    }
}

/// `a0 + a1*s`; `field = None` marks an element of the base field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a0: RatFunc,
    a1: RatFunc,
    field: Option<Arc<QuadField>>,
}

impl QuadExt {
    pub fn base(a0: RatFunc) -> Self {
        QuadExt { a0, a1: RatFunc::zero(), field: None }
    }

    pub fn new(a0: RatFunc, a1: RatFunc, field: &Arc<QuadField>) -> Self {
        QuadExt { a0, a1, field: Some(field.clone()) }.canonical()
    }

    pub fn zero() -> Self {
        Self::base(RatFunc::zero())
    }

    pub fn one() -> Self {
        Self::base(RatFunc::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::base(RatFunc::from_int(n))
    }

    pub fn a0(&self) -> &RatFunc {
        &self.a0
    }

    pub fn a1(&self) -> &RatFunc {
        &self.a1
    }

    pub fn field(&self) -> Option<&Arc<QuadField>> {
        self.field.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a0.is_one() && self.a1.is_zero()
    }

    pub fn as_base(&self) -> Option<&RatFunc> {
        self.a1.is_zero().then_some(&self.a0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.as_base().and_then(RatFunc::constant_value)
    }

    pub fn uses_var(&self, v: &str) -> bool {
        self.a0.uses_var(v) || self.a1.uses_var(v)
    }

    /// Elements with `a1 = 0` forget their field so equality is structural.
    fn canonical(mut self) -> Self {
        if self.a1.is_zero() {
            self.field = None;
        }
        self
    }

    fn common_field(&self, other: &QuadExt) -> Result<Option<Arc<QuadField>>> {
        match (&self.field, &other.field) {
            (None, f) | (f, None) => Ok(f.clone()),
            (Some(a), Some(b)) if a == b => Ok(Some(a.clone())),
            (Some(a), Some(b)) => Err(Error::ExtensionMismatch(
                format!("{}^2 = {}", a.name, a.d),
                format!("{}^2 = {}", b.name, b.d),
            )),
        }
    }

    pub fn add(&self, other: &QuadExt) -> Result<QuadExt> {
        let field = self.common_field(other)?;
        Ok(QuadExt { a0: self.a0.add(&other.a0), a1: self.a1.add(&other.a1), field }.canonical())
    }

    pub fn sub(&self, other: &QuadExt) -> Result<QuadExt> {
        let field = self.common_field(other)?;
        Ok(QuadExt { a0: self.a0.sub(&other.a0), a1: self.a1.sub(&other.a1), field }.canonical())
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { a0: self.a0.neg(), a1: self.a1.neg(), field: self.field.clone() }
    }

    pub fn mul(&self, other: &QuadExt) -> Result<QuadExt> {
        let field = self.common_field(other)?;
        let Some(f) = &field else {
            return Ok(QuadExt::base(self.a0.mul(&other.a0)));
        };
        let a0 = self.a0.mul(&other.a0).add(&self.a1.mul(&other.a1).mul(&f.d));
        let a1 = self.a0.mul(&other.a1).add(&self.a1.mul(&other.a0));
        Ok(QuadExt { a0, a1, field }.canonical())
    }

    pub fn scale(&self, c: &RatFunc) -> QuadExt {
        QuadExt { a0: self.a0.mul(c), a1: self.a1.mul(c), field: self.field.clone() }.canonical()
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt { a0: self.a0.clone(), a1: self.a1.neg(), field: self.field.clone() }
    }

    /// `a * conj(a) = a0^2 - D a1^2`, an element of the base field.
    pub fn norm(&self) -> RatFunc {
        match &self.field {
            None => self.a0.mul(&self.a0),
            Some(f) => self.a0.mul(&self.a0).sub(&self.a1.mul(&self.a1).mul(&f.d)),
        }
    }

    pub fn inv(&self) -> Result<QuadExt> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = n.inv()?;
        Ok(self.conj().scale(&ninv))
    }

    pub fn div(&self, other: &QuadExt) -> Result<QuadExt> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<QuadExt> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = QuadExt::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Applies a base-field operation to both components.
    pub fn map_base(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<QuadExt> {
        Ok(QuadExt { a0: f(&self.a0)?, a1: f(&self.a1)?, field: self.field.clone() }.canonical())
    }

    pub fn derivative(&self, v: &str) -> QuadExt {
        if self.field.as_ref().is_some_and(|f| f.d.uses_var(v)) {
            // d/dv of a1 * s with s^2 = D: s' = D'/(2D) * s.
            let f = self.field.as_ref().expect("checked");
            let ds = f.d.derivative(v).mul(&f.d.scale(&super::rat(2)).inv().expect("D nonzero"));
            let a1 = self.a1.derivative(v).add(&self.a1.mul(&ds));
            return QuadExt { a0: self.a0.derivative(v), a1, field: self.field.clone() }.canonical();
        }
        QuadExt { a0: self.a0.derivative(v), a1: self.a1.derivative(v), field: self.field.clone() }.canonical()
    }

    pub fn subst(&self, assign: &[(String, RatFunc)]) -> Result<QuadExt> {
        if let Some(f) = &self.field {
            if assign.iter().any(|(v, _)| f.d.uses_var(v)) {
                return Err(Error::Contract(format!(
                    "substitution touches the variables of {}^2 = {}",
                    f.name, f.d
                )));
            }
        }
        self.map_base(|r| r.subst(assign))
    }

    /// Specializes a parameter in the components and in `D`. When `D`
    /// becomes a rational square the extension splits and the numeric root
    /// is substituted for the generator.
    pub fn specialize(&self, v: &str, value: &Rational) -> Result<QuadExt> {
        let a0 = self.a0.specialize(v, value)?;
        let a1 = self.a1.specialize(v, value)?;
        let Some(f) = &self.field else {
            return Ok(QuadExt::base(a0));
        };
        let d = f.d.specialize(v, value)?;
        if d.is_zero() {
            return Err(Error::Degenerate(format!("{}^2 = 0 after specialization", f.name)));
        }
        if let Some(root) = d.constant_value().as_ref().and_then(rational_sqrt) {
            return Ok(QuadExt::base(a0.add(&a1.scale(&root))));
        }
        let field = QuadField::new(&f.name, d)?;
        Ok(QuadExt { a0, a1, field: Some(field) }.canonical())
    }

    /// Specializes the field of an element that carries no component data,
    /// mirroring [`QuadExt::specialize`] on the field alone.
    pub fn specialize_field(field: &Arc<QuadField>, v: &str, value: &Rational) -> Result<Option<Arc<QuadField>>> {
        let d = field.d.specialize(v, value)?;
        if d.is_zero() {
            return Err(Error::Degenerate(format!("{}^2 = 0 after specialization", field.name)));
        }
        if d.constant_value().as_ref().and_then(rational_sqrt).is_some() {
            return Ok(None);
        }
        Ok(Some(QuadField::new(&field.name, d)?))
    }

    /// Writes the element as a rational function in the generator variable.
    pub fn to_ratfunc(&self) -> RatFunc {
        match &self.field {
            None => self.a0.clone(),
            Some(f) => self.a0.add(&self.a1.mul(&RatFunc::var(&f.name))),
        }
    }

    /// Evaluation mod p given a square root of `D` mod p.
    pub fn eval_mod(&self, assign: &dyn Fn(&str) -> Option<u64>, p: u64) -> Result<u64> {
        let a0 = self.a0.eval_mod(assign, p)?;
        if self.a1.is_zero() {
            return Ok(a0);
        }
        let f = self.field.as_ref().expect("a1 != 0 implies a field");
        let s = assign(&f.name).ok_or_else(|| Error::Unassigned(f.name.clone()))?;
        let a1 = self.a1.eval_mod(assign, p)?;
        Ok(super::poly::add_mod(a0, super::poly::mul_mod(a1, s % p, p), p))
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            None => write!(f, "{}", self.a0),
            Some(q) if self.a0.is_zero() => write!(f, "({})*{}", self.a1, q.name),
            Some(q) => write!(f, "{} + ({})*{}", self.a0, self.a1, q.name),
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            None => write!(f, "QuadExt({self})"),
            Some(q) => write!(f, "QuadExt({self} | {}^2 = {})", q.name, q.d),
        }
    }
}

impl From<RatFunc> for QuadExt {
    fn from(r: RatFunc) -> Self {
        QuadExt::base(r)
    }
}

impl Field for QuadExt {
    fn zero_like(&self) -> Self {
        QuadExt::zero()
    }
    fn one_like(&self) -> Self {
        QuadExt::one()
    }
    fn int_like(&self, n: i64) -> Self {
        QuadExt::from_int(n)
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Result<Self> {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Result<Self> {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Result<Self> {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn generator_squares_to_minus_t() {
        let f = QuadField::new("s", r("-t")).unwrap();
        let s = f.generator();
        assert_eq!(s.mul(&s).unwrap(), QuadExt::base(r("-t")));
    }

    #[test]
    fn norm_form_and_conjugation() {
        let f = QuadField::new("s", r("-t")).unwrap();
        let a = QuadExt::new(r("x+1"), r("x/t"), &f);
        let n = a.mul(&a.conj()).unwrap();
        assert_eq!(n, QuadExt::base(a.norm()));
        assert_eq!(a.norm(), r("(x+1)^2 + x^2/t"));
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn mismatched_fields_rejected() {
        let f = QuadField::new("s", r("-t")).unwrap();
        let g = QuadField::new("r", r("4+4*t")).unwrap();
        assert!(matches!(f.generator().mul(&g.generator()), Err(Error::ExtensionMismatch(..))));
    }

    #[test]
    fn lift_reduces_powers() {
        let f = QuadField::new("s", r("-t")).unwrap();
        let e = f.lift(&r("s^3 + 2*s^2 + 1/(1+s)")).unwrap();
        let s = f.generator();
        let expect = s
            .pow(3)
            .unwrap()
            .add(&s.pow(2).unwrap().scale(&RatFunc::from_int(2)))
            .unwrap()
            .add(&s.add(&QuadExt::one()).unwrap().inv().unwrap())
            .unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn split_on_square_specialization() {
        let f = QuadField::new("s", r("-t")).unwrap();
        let a = QuadExt::new(r("1"), r("1"), &f);
        assert_eq!(a.specialize("t", &rat(-4)).unwrap(), QuadExt::from_int(3));
        let b = a.specialize("t", &rat(2)).unwrap();
        assert_eq!(b.field().unwrap().d(), &r("-2"));
    }
}
