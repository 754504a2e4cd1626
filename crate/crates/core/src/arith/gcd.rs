//! Multivariate gcd over Q.
//!
//! A heuristic evaluation gcd is tried first; content/primitive-part
//! recursion on a main variable with a primitive pseudo-remainder sequence
//! is the fallback. Two cheap filters run before both: exact divisibility,
//! and a modular certificate of coprimality (for each variable, specialize the
//! others at random points of F_p with p = 2^61 - 1 and take a univariate gcd;
//! if every image has degree zero while leading coefficients survive, the gcd
//! is a constant).

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use super::heugcd::heu_gcd;
use super::poly::{add_mod, inv_mod, mul_mod, Monomial, Poly};
use crate::error::{Error, Result};

const MODULUS: u64 = (1u64 << 61) - 1;

/// Normalized (leading coefficient 1) greatest common divisor.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroGcd);
    }
    Ok(gcd_any(a, b))
}

pub(crate) fn gcd_any(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let (ma, a1) = strip_monomial(a);
    let (mb, b1) = strip_monomial(b);
    let common = monomial_gcd(&ma, &mb);
    let core = gcd_core(&a1, &b1);
    common.mul(&core).monic()
}

/// Splits `p = x^m * q` with `q` free of monomial factors.
fn strip_monomial(p: &Poly) -> (Poly, Poly) {
    let n = p.vars().len();
    let mut mins = vec![u16::MAX; n];
    for (m, _) in p.terms() {
        for (k, &e) in m.exps().iter().enumerate() {
            mins[k] = mins[k].min(e);
        }
    }
    if mins.iter().all(|&e| e == 0) {
        return (Poly::one(), p.clone());
    }
    let mono = monomial_poly(p.vars(), &mins);
    let q = p.div_exact(&mono).expect("monomial content divides");
    (mono, q)
}

fn monomial_poly(vars: &[String], exps: &[u16]) -> Poly {
    let mut acc = Poly::one();
    for (v, &e) in vars.iter().zip(exps) {
        if e > 0 {
            acc = acc.mul(&Poly::var(v).pow(e as u32));
        }
    }
    acc
}

fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut acc = Poly::one();
    for v in a.vars() {
        let e = a.degree_in(v).min(b.degree_in(v));
        if e > 0 {
            acc = acc.mul(&Poly::var(v).pow(e));
        }
    }
    acc
}

fn gcd_core(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // A variable occurring in only one argument cannot occur in the gcd.
    if let Some(v) = a.vars().iter().find(|v| !b.uses_var(v)) {
        return gcd_with_coeffs(b, &a.as_univariate(v));
    }
    if let Some(v) = b.vars().iter().find(|v| !a.uses_var(v)) {
        return gcd_with_coeffs(a, &b.as_univariate(v));
    }
    let (small, large) = if a.num_terms() <= b.num_terms() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.monic();
    }
    if certainly_coprime(a, b) {
        return Poly::one();
    }
    if let Some(h) = heu_gcd(a, b) {
        return h.monic();
    }
    let x = main_variable(a, b);
    let ca = content_in(a, &x);
    let cb = content_in(b, &x);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_any(&ca, &cb);
    let g = primitive_prs(&pa, &pb, &x);
    c.mul(&g).monic()
}

fn gcd_with_coeffs(start: &Poly, coeffs: &[Poly]) -> Poly {
    let mut g = start.clone();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd_any(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g.monic()
}

fn main_variable(a: &Poly, b: &Poly) -> String {
    a.vars()
        .iter()
        .min_by_key(|v| (a.degree_in(v).max(b.degree_in(v)), a.degree_in(v) + b.degree_in(v)))
        .cloned()
        .expect("non-constant polynomial has a variable")
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content_in(p: &Poly, x: &str) -> Poly {
    let coeffs = p.as_univariate(x);
    let nz: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    match nz.as_slice() {
        [] => Poly::zero(),
        [only] => only.monic(),
        [first, rest @ ..] => {
            let mut g = (*first).clone();
            for c in rest {
                g = gcd_any(&g, c);
                if g.is_constant() {
                    return Poly::one();
                }
            }
            g.monic()
        }
    }
}

fn primitive_part(coeffs: Vec<Poly>) -> Vec<Poly> {
    let nz: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    let mut g = match nz.first() {
        Some(c) => (*c).clone(),
        None => return coeffs,
    };
    for c in &nz[1..] {
        g = gcd_any(&g, c);
        if g.is_constant() {
            break;
        }
    }
    if g.is_constant() {
        let lead = coeffs.last().map(|c| c.leading_coeff()).unwrap_or_else(num_traits::One::one);
        let inv = lead.recip();
        return coeffs.iter().map(|c| c.scale(&inv)).collect();
    }
    coeffs.iter().map(|c| c.div_exact(&g).expect("content divides")).collect()
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
}

fn pseudo_remainder(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let mut r = f.to_vec();
    trim(&mut r);
    let n = g.len() - 1;
    let lg = &g[n];
    while r.len() > n && !r.is_empty() {
        let k = r.len() - g.len();
        let lr = r.last().cloned().expect("non-empty");
        for c in r.iter_mut() {
            *c = c.mul(lg);
        }
        for (j, gj) in g.iter().enumerate() {
            r[j + k] = r[j + k].sub(&lr.mul(gj));
        }
        trim(&mut r);
    }
    r
}

fn primitive_prs(a: &Poly, b: &Poly, x: &str) -> Poly {
    let mut f = a.as_univariate(x);
    let mut g = b.as_univariate(x);
    trim(&mut f);
    trim(&mut g);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.len() == 1 {
            return Poly::one();
        }
        let r = pseudo_remainder(&f, &g);
        if r.is_empty() {
            let pp = primitive_part(g);
            return Poly::from_univariate(x, &pp).monic();
        }
        if r.len() == 1 {
            return Poly::one();
        }
        f = g;
        g = primitive_part(r);
    }
}

fn univariate_image(p: &Poly, x: &str, values: &BTreeMap<&str, u64>) -> Option<Vec<u64>> {
    let coeffs = p.as_univariate(x);
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        out.push(c.eval_mod(&|v| values.get(v).copied(), MODULUS).ok()?);
    }
    Some(out)
}

fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let p = MODULUS;
    let norm = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    norm(&mut a);
    norm(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let lb_inv = inv_mod(*b.last().unwrap(), p).unwrap();
        while a.len() >= b.len() && !a.is_empty() {
            let k = a.len() - b.len();
            let q = mul_mod(*a.last().unwrap(), lb_inv, p);
            for (j, &bj) in b.iter().enumerate() {
                a[j + k] = add_mod(a[j + k], p - mul_mod(q, bj, p), p);
            }
            norm(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn certainly_coprime(a: &Poly, b: &Poly) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b33_636f_7272 ^ (a.num_terms() as u64) << 20 ^ b.num_terms() as u64);
    let vars: Vec<String> = a.vars().to_vec();
    'vars: for x in &vars {
        for _attempt in 0..3 {
            let values: BTreeMap<&str, u64> = vars
                .iter()
                .filter(|v| *v != x)
                .map(|v| (v.as_str(), rng.gen_range(1..MODULUS)))
                .collect();
            let (Some(ia), Some(ib)) = (univariate_image(a, x, &values), univariate_image(b, x, &values)) else {
                return false;
            };
            if ia.last().is_none_or(|c| *c == 0) || ib.last().is_none_or(|c| *c == 0) {
                continue;
            }
            if univariate_gcd_degree(ia, ib) > 0 {
                return false;
            }
            continue 'vars;
        }
        return false;
    }
    true
}

/// Exact square root of a polynomial, if it is a perfect square.
pub fn sqrt_exact(p: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return Some(Poly::zero());
    }
    if let Some(c) = p.constant_value() {
        return super::rational_sqrt(&c).map(Poly::constant);
    }
    let (lm, lc) = p.leading()?;
    if lm.exps().iter().any(|e| e % 2 == 1) {
        return None;
    }
    let root_c = super::rational_sqrt(lc)?;
    let half: Vec<u16> = lm.exps().iter().map(|e| e / 2).collect();
    let mut terms = BTreeMap::new();
    terms.insert(Monomial::new(half.as_slice()), root_c);
    let lead = Poly::from_terms(p.vars_arc().clone(), terms);
    let two_lead = lead.scale(&super::Rational::from_integer(2.into()));
    let mut q = lead.clone();
    let mut rem = p.sub(&q.mul(&q));
    let max_steps = p.num_terms() * 4 + 16;
    for _ in 0..max_steps {
        if rem.is_zero() {
            return Some(q);
        }
        // next term = lt(rem) / (2 lt(q))
        let (rm, rc) = rem.leading()?;
        let mut single = BTreeMap::new();
        single.insert(rm.clone(), rc.clone());
        let lt = Poly::from_terms(rem.vars_arc().clone(), single);
        let t = lt.div_exact(&two_lead)?;
        if t.is_zero() {
            return None;
        }
        // q_new^2 = q^2 + 2 q t + t^2
        rem = rem.sub(&q.mul(&t).scale(&super::Rational::from_integer(2.into()))).sub(&t.mul(&t));
        q = q.add(&t);
        if rem.total_degree() > p.total_degree() {
            return None;
        }
    }
    if rem.is_zero() {
        Some(q)
    } else {
        None
    }
}

/// Squarefree test: `gcd(f, df/dv) = 1` for every variable `v`.
pub fn is_squarefree(f: &Poly) -> bool {
    if f.is_zero() {
        return false;
    }
    f.vars().iter().all(|v| {
        let d = f.derivative(v);
        gcd_any(f, &d).is_constant()
    })
}

/// The product of the factors of odd multiplicity of `p`, times the
/// squarefree part of its leading coefficient: `p = kernel * square`.
pub fn squarefree_kernel(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let lc = p.leading_coeff().clone();
    let c = super::Rational::from_integer(integer_kernel(&(lc.numer() * lc.denom())));
    poly_kernel(&p.monic()).scale(&c)
}

fn integer_kernel(n: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    use num_traits::Signed;
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut k = BigInt::from(2);
    while &k * &k <= m {
        let mut e = 0;
        while (&m % &k).is_zero() {
            m /= &k;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &k;
        }
        k += 1;
    }
    out *= m;
    if n.is_negative() {
        -out
    } else {
        out
    }
}

fn poly_kernel(q: &Poly) -> Poly {
    let Some(v) = q.vars().iter().find(|v| q.uses_var(v)).cloned() else {
        return Poly::one();
    };
    let cont = content_in(q, &v);
    let prim = q.div_exact(&cont).expect("content divides").monic();
    poly_kernel(&cont).mul(&odd_part(&prim, &v))
}

/// Yun's squarefree decomposition in `v`, keeping odd multiplicities.
fn odd_part(p: &Poly, v: &str) -> Poly {
    let dp = p.derivative(v);
    let a0 = gcd_any(p, &dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative(v));
    let mut out = Poly::one();
    let mut i = 1;
    while b.uses_var(v) {
        let a = gcd_any(&b, &d);
        if i % 2 == 1 {
            out = out.mul(&a);
        }
        let b2 = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b2.derivative(v));
        b = b2;
        i += 1;
    }
    out.monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    /// Trial-division oracle: the largest-degree monic candidate among the
    /// given divisors that divides both inputs.
    fn trial_gcd(a: &Poly, b: &Poly, candidates: &[Poly]) -> Poly {
        candidates
            .iter()
            .filter(|c| a.div_exact(c).is_some() && b.div_exact(c).is_some())
            .max_by_key(|c| c.total_degree())
            .cloned()
            .unwrap_or_else(Poly::one)
            .monic()
    }

    #[test]
    fn kernels() {
        assert_eq!(squarefree_kernel(&p("-16*t")), p("-t"));
        assert_eq!(squarefree_kernel(&p("12*(t+1)^3*(t-2)^2*x")), p("3*(t+1)*x"));
        assert_eq!(squarefree_kernel(&p("4")), p("1"));
    }

    #[test]
    fn univariate_gcd() {
        assert_eq!(gcd(&p("x^2-1"), &p("x-1")).unwrap(), p("x-1"));
    }

    #[test]
    fn monomial_gcd_case() {
        assert_eq!(gcd(&p("x^2*z^3"), &p("x^3*z")).unwrap(), p("x^2*z"));
    }

    #[test]
    fn repeated_factor_against_trial_division() {
        let a = p("(x*z-1)^2");
        let b = p("(x*z-1)*z^3");
        let cands = vec![p("x*z-1"), p("(x*z-1)^2"), p("z"), p("z*(x*z-1)"), p("x")];
        assert_eq!(trial_gcd(&a, &b, &cands), p("x*z-1"));
        assert_eq!(gcd(&a, &b).unwrap(), p("x*z-1"));
    }

    #[test]
    fn both_zero_rejected() {
        assert_eq!(gcd(&Poly::zero(), &Poly::zero()), Err(Error::ZeroGcd));
    }

    #[test]
    fn nontrivial_multivariate() {
        let g = p("x*t - z^2 + 3");
        let a = g.mul(&p("x^2 + t*z + 1"));
        let b = g.mul(&p("x - z*t^2"));
        assert_eq!(gcd(&a, &b).unwrap(), g.monic());
    }

    #[test]
    fn coprime_multivariate() {
        let a = p("x^3*z + t*x - 1");
        let b = p("z^2 - x*t + 5");
        assert!(gcd(&a, &b).unwrap().is_one());
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_exact(&p("4*x^2 - 4*x*z + z^2")), Some(p("2*x - z")));
        assert_eq!(sqrt_exact(&p("x^2 + 1")), None);
        assert_eq!(sqrt_exact(&p("9/4")), Some(p("3/2")));
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(&p("x*(x^2-4*x+8)*(x^2+4*x+8)")));
        assert!(!is_squarefree(&p("x*(x-1)^2")));
    }
}
