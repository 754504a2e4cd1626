//! Reduced quotients of polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::gcd::gcd_any;
use super::poly::Poly;
use super::{Field, Rational};
use crate::error::{Error, Result};

/// `num/den` with `gcd(num, den) = 1` and `den` monic in grlex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = gcd_any(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::normalized(num, den)
    }

    /// Makes the denominator monic; assumes the parts are already coprime.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(Poly::var(name))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn uses_var(&self, v: &str) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    /// Sorted, deduplicated variables of numerator and denominator.
    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.vars().iter().chain(self.den.vars()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add_signed(other, true)
    }

    fn add_signed(&self, other: &RatFunc, negate: bool) -> RatFunc {
        let rhs_num = if negate { other.num.neg() } else { other.num.clone() };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RatFunc { num: rhs_num, den: other.den.clone() };
        }
        if self.den == other.den {
            let num = self.num.add(&rhs_num);
            if self.den.is_one() {
                return RatFunc { num, den: Poly::one() };
            }
            return Self::reduce(num, self.den.clone());
        }
        // Henrici: with g = gcd(b, d), a/b + c/d = (a d' + c b') / (b' d) and
        // only the factor g can be shared with the new numerator.
        let g = gcd_any(&self.den, &other.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&rhs_num.mul(&b1));
        if num.is_zero() {
            return RatFunc::zero();
        }
        let den = b1.mul(&other.den);
        if g.is_one() {
            return Self::normalized(num, den);
        }
        let h = gcd_any(&num, &g);
        if h.is_one() {
            Self::normalized(num, den)
        } else {
            Self::normalized(num.div_exact(&h).expect("gcd divides"), den.div_exact(&h).expect("gcd divides"))
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: Poly::one() };
        }
        // Henrici: cross-cancel a/b * c/d by gcd(a, d) and gcd(c, b).
        let g1 = gcd_any(&self.num, &other.den);
        let g2 = gcd_any(&other.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Self::normalized(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn derivative(&self, v: &str) -> RatFunc {
        if !self.uses_var(v) {
            return RatFunc::zero();
        }
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative(v));
        }
        let num = self.num.derivative(v).mul(&self.den).sub(&self.num.mul(&self.den.derivative(v)));
        Self::reduce(num, self.den.mul(&self.den))
    }

    /// Simultaneous substitution of variables by rational functions.
    ///
    /// Each side is homogenized against the image denominators so that the
    /// substitution is a single polynomial evaluation; the known denominator
    /// powers are then cancelled by trial division before a final gcd.
    pub fn subst(&self, assign: &[(String, RatFunc)]) -> Result<RatFunc> {
        let relevant: Vec<&(String, RatFunc)> = assign.iter().filter(|(v, _)| self.uses_var(v)).collect();
        if relevant.is_empty() {
            return Ok(self.clone());
        }
        if relevant.iter().all(|(_, r)| r.den.is_one()) {
            let polys: Vec<(String, Poly)> = relevant.iter().map(|(v, r)| (v.clone(), r.num.clone())).collect();
            let num = self.num.subst(&polys);
            let den = self.den.subst(&polys);
            return RatFunc::new(num, den).map_err(|_| Error::Undefined("denominator vanishes after substitution".into()));
        }
        let (n_top, n_exp) = homogenized(&self.num, &relevant);
        let (d_top, d_exp) = homogenized(&self.den, &relevant);
        if d_top.is_zero() {
            return Err(Error::Undefined("denominator vanishes after substitution".into()));
        }
        let mut num = n_top;
        let mut den = d_top;
        for (k, (_, r)) in relevant.iter().enumerate() {
            if r.den.is_one() {
                continue;
            }
            let diff = d_exp[k] as i64 - n_exp[k] as i64;
            if diff > 0 {
                num = num.mul(&r.den.pow(diff as u32));
            } else if diff < 0 {
                den = den.mul(&r.den.pow((-diff) as u32));
            }
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        // Strip common powers of the image denominators cheaply first.
        for (_, r) in &relevant {
            if r.den.is_constant() {
                continue;
            }
            while let (Some(n2), Some(d2)) = (num.div_exact(&r.den), den.div_exact(&r.den)) {
                num = n2;
                den = d2;
            }
        }
        Ok(Self::reduce(num, den))
    }

    /// Replaces one variable by a rational number.
    pub fn specialize(&self, v: &str, value: &Rational) -> Result<RatFunc> {
        if !self.uses_var(v) {
            return Ok(self.clone());
        }
        let den = self.den.specialize(v, value);
        if den.is_zero() {
            return Err(Error::BadSpecialization);
        }
        Ok(Self::reduce(self.num.specialize(v, value), den))
    }

    /// Reduction mod p followed by evaluation at the assignment.
    pub fn eval_mod(&self, assign: &dyn Fn(&str) -> Option<u64>, p: u64) -> Result<u64> {
        let d = self.den.eval_mod(assign, p)?;
        if d == 0 {
            return Err(Error::BadSpecialization);
        }
        let n = self.num.eval_mod(assign, p)?;
        let inv = super::poly::inv_mod(d, p).ok_or(Error::BadSpecialization)?;
        Ok(super::poly::mul_mod(n, inv, p))
    }

    /// Evaluation at a total rational assignment.
    pub fn eval_rational(&self, assign: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut r = self.clone();
        for (v, val) in assign {
            r = r.specialize(v, val)?;
        }
        r.constant_value().ok_or_else(|| Error::Unassigned(r.vars().join(",")))
    }
}

/// For `P` and images `n_i/d_i` returns `(H, e)` with
/// `P(n/d) = H / prod d_i^{e_i}` and `e_i = deg_{v_i} P`.
fn homogenized(p: &Poly, assign: &[&(String, RatFunc)]) -> (Poly, Vec<u32>) {
    let exps: Vec<u32> = assign.iter().map(|(v, _)| p.degree_in(v)).collect();
    (homogenize_rec(p, assign, &exps, 0), exps)
}

fn homogenize_rec(p: &Poly, assign: &[&(String, RatFunc)], exps: &[u32], k: usize) -> Poly {
    if k == assign.len() || p.is_zero() {
        return p.clone();
    }
    let (name, image) = assign[k];
    let e = exps[k];
    let coeffs = p.as_univariate(name);
    let n = &image.num;
    let d = &image.den;
    // Horner in n with the matching power of d on each coefficient.
    let mut dpow: Vec<Poly> = vec![Poly::one()];
    if !d.is_one() {
        for i in 1..=e as usize {
            let next = dpow[i - 1].mul(d);
            dpow.push(next);
        }
    }
    let dp = |i: usize| if d.is_one() { Poly::one() } else { dpow[i].clone() };
    let mut acc = Poly::zero();
    for j in (0..=e as usize).rev() {
        let cj = coeffs.get(j).cloned().unwrap_or_else(Poly::zero);
        let h = homogenize_rec(&cj, assign, exps, k + 1);
        acc = acc.mul(n);
        if !h.is_zero() {
            acc = acc.add(&h.mul(&dp(e as usize - j)));
        }
    }
    acc
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let den = self.den.to_string();
        if self.den.num_terms() > 1 || den.contains('*') {
            write!(f, "{num}/({den})")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero()
    }
    fn one_like(&self) -> Self {
        RatFunc::one()
    }
    fn int_like(&self, n: i64) -> Self {
        RatFunc::from_int(n)
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Result<Self> {
        Ok(self.add(o))
    }
    fn minus(&self, o: &Self) -> Result<Self> {
        Ok(self.sub(o))
    }
    fn times(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(o))
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
    use crate::arith::{frac, rat};

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn reduced_on_construction() {
        let f = r("(x^2-1)/(2*x-2)");
        assert_eq!(f.num(), &"1/2*x + 1/2".parse::<Poly>().unwrap());
        assert!(f.den().is_one());
    }

    #[test]
    fn henrici_sum() {
        let f = r("1/(x*(x+1))").add(&r("1/(x*(x-1))"));
        assert_eq!(f, r("2/((x+1)*(x-1))"));
    }

    #[test]
    fn mod_p_examples() {
        let f = r("1/(t+1)");
        let at = |v: u64| move |name: &str| (name == "t").then_some(v);
        assert_eq!(f.eval_mod(&at(1), 7).unwrap(), 4);
        assert_eq!(f.eval_mod(&at(6), 7), Err(Error::BadSpecialization));
        let g = r("x^2-1");
        assert_eq!(g.eval_mod(&|n: &str| (n == "x").then_some(3), 7).unwrap(), 1);
        let h = r("x/7");
        assert_eq!(h.eval_mod(&|_: &str| Some(1), 7), Err(Error::BadPrime { p: 7 }));
    }

    #[test]
    fn substitution_with_denominators() {
        let f = r("x^2*z + 1/x");
        let g = f.subst(&[("x".into(), r("1/z")), ("z".into(), r("1/x"))]).unwrap();
        assert_eq!(g, r("1/(z^2*x) + z"));
    }

    #[test]
    fn derivative_quotient_rule() {
        assert_eq!(r("1/(x+1)").derivative("x"), r("-1/(x+1)^2"));
    }

    #[test]
    fn specialization() {
        assert_eq!(r("x/(t+1)").specialize("t", &rat(1)).unwrap(), r("x/2"));
        assert_eq!(r("x/(t+1)").specialize("t", &rat(-1)), Err(Error::BadSpecialization));
        assert_eq!(r("t/(t+1)").specialize("t", &frac(1, 2)).unwrap(), r("1/3"));
    }
}
