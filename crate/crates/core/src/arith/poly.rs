//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], ordered graded
//! lexicographically with the first variable most significant. Variable lists
//! are sorted by name and pruned to the variables that actually occur, so two
//! equal polynomials always have identical representations.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::Rational;
use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u16; 6]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn new(exps: impl Into<Exponents>) -> Self {
        Monomial(exps.into())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Exponents::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Vars = Arc<[String]>;

fn no_vars() -> Vars {
    Arc::from(Vec::<String>::new())
}

fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

fn union_vars(a: &Vars, b: &Vars) -> Vars {
    if same_vars(a, b) {
        return a.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    if a.is_empty() {
        return b.clone();
    }
    let mut out: Vec<String> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Less => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(y.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(x.clone());
                    i += 1;
                    j += 1;
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(y)) => {
                out.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Arc::from(out)
}

/// A polynomial in named variables over Q.
#[derive(Clone)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { vars: no_vars(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(0), c);
        }
        Poly { vars: no_vars(), terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::new([1u16].as_slice()), Rational::one());
        Poly { vars: Arc::from(vec![name.to_string()]), terms }
    }

    /// Builds a polynomial from raw parts; unused variables are pruned.
    pub fn from_terms(vars: Vars, terms: BTreeMap<Monomial, Rational>) -> Self {
        Poly { vars, terms }.pruned()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn vars_arc(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn uses_var(&self, name: &str) -> bool {
        self.var_index(name).is_some()
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// Leading term in the graded lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            None => 0,
            Some(i) => self.terms.keys().map(|m| m.0[i] as u32).max().unwrap_or(0),
        }
    }

    /// Total degree in a subset of the variables.
    pub fn degree_in_vars(&self, names: &[&str]) -> u32 {
        let idx: Vec<usize> = names.iter().filter_map(|n| self.var_index(n)).collect();
        self.terms.keys().map(|m| idx.iter().map(|&i| m.0[i] as u32).sum()).max().unwrap_or(0)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    fn pruned(mut self) -> Self {
        if self.vars.is_empty() {
            return self;
        }
        if self.terms.is_empty() {
            self.vars = no_vars();
            return self;
        }
        let n = self.vars.len();
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(m.0.iter()) {
                *u |= e > 0;
            }
        }
        if used.iter().all(|&u| u) {
            return self;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let vars: Vars = Arc::from(keep.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>());
        let terms = self
            .terms
            .into_iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c))
            .collect();
        Poly { vars, terms }
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub(crate) fn lift_to(&self, vars: &Vars) -> BTreeMap<Monomial, Rational> {
        if same_vars(&self.vars, vars) {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("lift_to: target must contain every variable"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = Exponents::from_elem(0, vars.len());
                for (k, &p) in pos.iter().enumerate() {
                    e[p] = m.0[k];
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn combine(&self, other: &Poly, negate: bool) -> Poly {
        let vars = union_vars(&self.vars, &other.vars);
        let mut terms = self.lift_to(&vars);
        let rhs = if same_vars(&other.vars, &vars) { None } else { Some(other.lift_to(&vars)) };
        let iter: Box<dyn Iterator<Item = (&Monomial, &Rational)>> = match &rhs {
            Some(t) => Box::new(t.iter()),
            None => Box::new(other.terms.iter()),
        };
        for (m, c) in iter {
            match terms.get_mut(m) {
                Some(v) => {
                    if negate {
                        *v -= c;
                    } else {
                        *v += c;
                    }
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), if negate { -c.clone() } else { c.clone() });
                }
            }
        }
        Poly::from_terms(vars, terms)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        self.combine(other, true)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        let vars = union_vars(&self.vars, &other.vars);
        let a = self.lift_to(&vars);
        let b = other.lift_to(&vars);
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Poly::from_terms(vars, terms)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, name: &str) -> Poly {
        let Some(i) = self.var_index(name) else {
            return Poly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.0[i] = e - 1;
            terms.insert(nm, c * Rational::from_integer(BigInt::from(e)));
        }
        Poly::from_terms(self.vars.clone(), terms)
    }

    /// Coefficients `c_k` (free of `name`) with `self = sum c_k name^k`.
    pub fn as_univariate(&self, name: &str) -> Vec<Poly> {
        let Some(i) = self.var_index(name) else {
            return if self.is_zero() { vec![] } else { vec![self.clone()] };
        };
        let rest: Vars = Arc::from(
            self.vars.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, v)| v.clone()).collect::<Vec<_>>(),
        );
        let deg = self.degree_in(name) as usize;
        let mut buckets: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let rm: Exponents = m.0.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
            buckets[e].insert(Monomial(rm), c.clone());
        }
        buckets.into_iter().map(|t| Poly::from_terms(rest.clone(), t)).collect()
    }

    /// Inverse of [`Poly::as_univariate`].
    pub fn from_univariate(name: &str, coeffs: &[Poly]) -> Poly {
        let x = Poly::var(name);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        for v in divisor.vars.iter() {
            if self.degree_in(v) < divisor.degree_in(v) {
                return None;
            }
        }
        let vars = union_vars(&self.vars, &divisor.vars);
        let d = divisor.lift_to(&vars);
        let (ld_m, ld_c) = d.last_key_value().map(|(m, c)| (m.clone(), c.clone()))?;
        let ld_inv = ld_c.recip();
        let mut r = self.lift_to(&vars);
        let mut q = BTreeMap::new();
        while let Some((m, c)) = r.last_key_value() {
            let qm = m.checked_div(&ld_m)?;
            let qc = c * &ld_inv;
            for (dm, dc) in &d {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match r.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            r.remove(&key);
                        }
                    }
                    None => {
                        r.insert(key, -delta);
                    }
                }
            }
            q.insert(qm, qc);
        }
        Some(Poly::from_terms(vars, q))
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn subst(&self, assign: &[(String, Poly)]) -> Poly {
        let relevant: Vec<&(String, Poly)> = assign.iter().filter(|(v, _)| self.uses_var(v)).collect();
        if relevant.is_empty() {
            return self.clone();
        }
        let (name, value) = relevant[0];
        let coeffs = self.as_univariate(name);
        let rest: Vec<(String, Poly)> = relevant[1..].iter().map(|p| (*p).clone()).collect();
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(&c.subst(&rest));
        }
        acc
    }

    /// Replaces one variable by a rational number.
    pub fn specialize(&self, name: &str, value: &Rational) -> Poly {
        self.subst(&[(name.to_string(), Poly::constant(value.clone()))])
    }

    /// Evaluates the polynomial modulo `p` under a total assignment.
    pub fn eval_mod(&self, assign: &dyn Fn(&str) -> Option<u64>, p: u64) -> Result<u64> {
        let vals: Vec<u64> = self
            .vars
            .iter()
            .map(|v| assign(v).map(|x| x % p).ok_or_else(|| Error::Unassigned(v.clone())))
            .collect::<Result<_>>()?;
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = rat_mod(c, p)?;
            for (&e, &x) in m.0.iter().zip(&vals) {
                if e > 0 {
                    t = mul_mod(t, pow_mod(x, e as u64, p), p);
                }
            }
            acc = add_mod(acc, t, p);
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let c = f(c);
                (!c.is_zero()).then(|| (m.clone(), c))
            })
            .collect();
        Poly::from_terms(self.vars.clone(), terms)
    }

    /// Clears denominators: returns `(k, q)` with `self = k * q`, `q` integral
    /// with content 1 and positive leading coefficient.
    pub fn integer_primitive(&self) -> (Rational, Poly) {
        if self.is_zero() {
            return (Rational::one(), Poly::zero());
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut k = Rational::new(num, den);
        if self.leading_coeff().is_negative() {
            k = -k;
        }
        (k.clone(), self.scale(&k.recip()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format!("{abs}"));
            }
            for (v, &e) in self.vars.iter().zip(m.0.iter()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

pub(crate) fn int_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits in u64")
}

/// Reduces a rational number modulo the prime `p`.
pub fn rat_mod(c: &Rational, p: u64) -> Result<u64> {
    let d = int_mod(c.denom(), p);
    let inv = inv_mod(d, p).ok_or(Error::BadPrime { p })?;
    Ok(mul_mod(int_mod(c.numer(), p), inv, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("x+1").mul(&p("x-1")), p("x^2-1"));
    }

    #[test]
    fn cancellation_leaves_empty_term_map() {
        let z = p("x^2-1").sub(&p("x^2-1"));
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        assert!(z.vars().is_empty());
    }

    #[test]
    fn sextic_expands_to_eight_terms() {
        // By hand: x*z*(x+1)*(z+1) = x^2 z^2 + x^2 z + x z^2 + x z, and each of
        // the four terms splits in two against (x + t z), with no collisions.
        let f = p("x*z*(x+1)*(z+1)*(x+z*t)");
        assert_eq!(f.num_terms(), 8);
        let expected = p("x^3*z^2 + x^3*z + x^2*z^2 + x^2*z + t*x^2*z^3 + t*x^2*z^2 + t*x*z^3 + t*x*z^2");
        assert_eq!(f, expected);
    }

    #[test]
    fn exact_division() {
        let a = p("x^3*z - x*z + 2*x^2 - 2");
        let q = a.div_exact(&p("x^2-1")).unwrap();
        assert_eq!(q, p("x*z+2"));
        assert!(p("x^2+1").div_exact(&p("x-1")).is_none());
    }

    #[test]
    fn univariate_roundtrip() {
        let a = p("t*x^2*z + 3*x - z^4 + 1/2");
        let c = a.as_univariate("x");
        assert_eq!(c.len(), 3);
        assert_eq!(Poly::from_univariate("x", &c), a);
    }

    #[test]
    fn substitution_is_simultaneous() {
        let a = p("x - 2*z");
        let b = a.subst(&[("x".into(), p("z")), ("z".into(), p("x"))]);
        assert_eq!(b, p("z - 2*x"));
    }

    #[test]
    fn modular_evaluation() {
        let f = p("x^2-1");
        assert_eq!(f.eval_mod(&|_| Some(3), 7).unwrap(), 1);
        assert_eq!(p("1/7*x").eval_mod(&|_| Some(1), 7), Err(Error::BadPrime { p: 7 }));
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new([2u16, 0].as_slice());
        let b = Monomial::new([0u16, 3].as_slice());
        let c = Monomial::new([1u16, 1].as_slice());
        assert!(b > a);
        assert!(a > c);
    }
}
