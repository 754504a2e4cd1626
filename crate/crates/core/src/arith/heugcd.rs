//! Heuristic gcd over `Z[x1, ..., xn]`.
//!
//! Evaluates one variable at a large integer, recurses, and rebuilds the
//! candidate from its balanced digits in that integer. A candidate is only
//! returned after it divides both inputs, so a `Some` is always correct; a
//! `None` means the caller should fall back to a complete method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::Rational;

const ATTEMPTS: usize = 6;

/// Gcd of two nonzero polynomials with integer coefficients, normalized to
/// content one and positive leading coefficient.
pub(crate) fn heu_gcd(f: &Poly, g: &Poly) -> Option<Poly> {
    let (_, f) = f.integer_primitive();
    let (_, g) = g.integer_primitive();
    Some(heu_rec(&f, &g)?.integer_primitive().1)
}

fn int_coeff(c: &Rational) -> &BigInt {
    debug_assert!(c.is_integer());
    c.numer()
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms().map(|(_, c)| int_coeff(c).abs()).max().unwrap_or_else(BigInt::zero)
}

fn content(p: &Poly) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(int_coeff(c)))
}

fn heu_rec(f: &Poly, g: &Poly) -> Option<Poly> {
    let v = match f.vars().first().or(g.vars().first()) {
        Some(v) => v.clone(),
        None => {
            let a = f.constant_value()?;
            let b = g.constant_value()?;
            return Some(Poly::constant(Rational::from_integer(int_coeff(&a).gcd(int_coeff(&b)))));
        }
    };
    let cf = content(f);
    let cg = content(g);
    let c = cf.gcd(&cg);
    let f = f.scale(&Rational::from_integer(cf).recip());
    let g = g.scale(&Rational::from_integer(cg).recip());
    let nf = max_norm(&f);
    let ng = max_norm(&g);
    let b: BigInt = nf.clone().min(ng.clone()) * 2 + 29;
    let lf = int_coeff(&f.leading_coeff()).abs();
    let lg = int_coeff(&g.leading_coeff()).abs();
    let low: BigInt = (nf / lf).min(ng / lg) * 2 + 2;
    let mut x = b.clone().min(b.sqrt() * 99).max(low);
    for _ in 0..ATTEMPTS {
        let xr = Rational::from_integer(x.clone());
        let ff = f.specialize(&v, &xr);
        let gg = g.specialize(&v, &xr);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heu_rec(&ff, &gg) {
                let h = interpolate(&h, &x, &v);
                if !h.is_zero() {
                    let h = h.integer_primitive().1;
                    if f.div_exact(&h).is_some() && g.div_exact(&h).is_some() {
                        return Some(h.scale(&Rational::from_integer(c)));
                    }
                }
            }
        }
        x = x.clone() * 73794 * x.sqrt().sqrt() / 27011;
    }
    None
}

/// Balanced residue of `c` modulo `x`, in `(-x/2, x/2]`.
fn smod(c: &BigInt, x: &BigInt) -> BigInt {
    let r = c.mod_floor(x);
    if r.clone() * 2 > *x {
        r - x
    } else {
        r
    }
}

/// Reads the coefficients of `h` as balanced base-`x` numerals whose digits
/// are the coefficients of the powers of `v`.
fn interpolate(h: &Poly, x: &BigInt, v: &str) -> Poly {
    let mut h = h.clone();
    let mut out = Poly::zero();
    let mut power = Poly::one();
    let var = Poly::var(v);
    let xr = Rational::from_integer(x.clone());
    let inv = xr.recip();
    while !h.is_zero() {
        let digit = h.map_coeffs(|c| Rational::from_integer(smod(int_coeff(c), x)));
        out = out.add(&digit.mul(&power));
        h = h.sub(&digit).scale(&inv);
        power = power.mul(&var);
    }
    if out.leading_coeff().is_negative() {
        out = out.neg();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn recovers_common_factor() {
        let g = p("x^2*y - 3*y*t + 7");
        let a = g.mul(&p("x + y^2 - 2"));
        let b = g.mul(&p("x*t - 5*y + 1"));
        let h = heu_gcd(&a, &b).unwrap();
        assert_eq!(h.integer_primitive().1, g.integer_primitive().1);
    }

    #[test]
    fn coprime_gives_one() {
        let h = heu_gcd(&p("x^2 + y^2 + 1"), &p("x - y")).unwrap();
        assert!(h.is_one());
    }

    #[test]
    fn normalized_to_content_one() {
        let h = heu_gcd(&p("6*x + 6"), &p("4*x^2 - 4")).unwrap();
        assert_eq!(h, p("x + 1"));
    }
}
