//! Intersection of a line with a conic in the projective plane, over a
//! function field or a quadratic extension of one.

use std::fmt;

use crate::arith::gcd::squarefree_kernel;
use crate::arith::{Poly, QuadExt, QuadField, RatFunc};
use crate::error::{Error, Result};
use std::sync::Arc;

/// `a u + b v + c w = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Line(pub [QuadExt; 3]);

/// Symmetric matrix of a ternary quadratic form in `(u, v, w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Conic(pub [[QuadExt; 3]; 3]);

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Intersection {
    /// Double root at the given projective point.
    Tangent([QuadExt; 3]),
    TransverseRational,
    /// Two points conjugate over the base field adjoined `sqrt(d)`.
    TransverseConjugate { d: QuadExt },
}

impl fmt::Display for Intersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Intersection::Tangent(p) => write!(f, "tangent at ({} : {} : {})", p[0], p[1], p[2]),
            Intersection::TransverseRational => write!(f, "transverse rational"),
            Intersection::TransverseConjugate { d } => write!(f, "transverse conjugate over Q(sqrt({d}))"),
        }
    }
}

/// Affine coefficient of `u^i v^j` in `p`, lifted into the extension.
fn coeff(p: &QuadExt, u: &str, v: &str, i: usize, j: usize) -> Result<QuadExt> {
    let pick = |r: &RatFunc| -> Result<RatFunc> {
        if r.den().uses_var(u) || r.den().uses_var(v) {
            return Err(Error::Contract(format!("{r} is not polynomial in {u}, {v}")));
        }
        let c = r.num().as_univariate(u).get(i).cloned().unwrap_or_else(Poly::zero);
        let c = c.as_univariate(v).get(j).cloned().unwrap_or_else(Poly::zero);
        RatFunc::from_poly(c).div(&RatFunc::from_poly(r.den().clone()))
    };
    let a0 = pick(p.a0())?;
    match p.field() {
        None => Ok(QuadExt::base(a0)),
        Some(f) => Ok(QuadExt::new(a0, pick(p.a1())?, f)),
    }
}

impl Line {
    /// From an affine linear polynomial in `u, v`.
    pub fn from_affine(p: &QuadExt, u: &str, v: &str) -> Result<Line> {
        let total = |r: &RatFunc| r.num().degree_in_vars(&[u, v]);
        if total(p.a0()) > 1 || total(p.a1()) > 1 {
            return Err(Error::Contract("line must be linear".into()));
        }
        Ok(Line([coeff(p, u, v, 1, 0)?, coeff(p, u, v, 0, 1)?, coeff(p, u, v, 0, 0)?]))
    }

    pub fn at_infinity() -> Line {
        Line([QuadExt::zero(), QuadExt::zero(), QuadExt::one()])
    }

    /// Two independent points spanning the line.
    fn points(&self) -> Result<([QuadExt; 3], [QuadExt; 3])> {
        let [a, b, c] = &self.0;
        let z = QuadExt::zero();
        let cands = [
            [b.clone(), a.neg(), z.clone()],
            [c.clone(), z.clone(), a.neg()],
            [z.clone(), c.clone(), b.neg()],
        ];
        let nonzero: Vec<&[QuadExt; 3]> = cands.iter().filter(|p| p.iter().any(|x| !x.is_zero())).collect();
        for (i, p) in nonzero.iter().enumerate() {
            for q in &nonzero[i + 1..] {
                if !cross_is_zero(p, q)? {
                    return Ok(((*p).clone(), (*q).clone()));
                }
            }
        }
        Err(Error::Degenerate("zero line".into()))
    }
}

fn cross_is_zero(p: &[QuadExt; 3], q: &[QuadExt; 3]) -> Result<bool> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if !p[i].mul(&q[j])?.sub(&p[j].mul(&q[i])?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Conic {
    /// From an affine polynomial of degree at most two in `u, v`.
    pub fn from_affine(p: &QuadExt, u: &str, v: &str) -> Result<Conic> {
        let half = |e: QuadExt| e.scale(&RatFunc::constant(crate::arith::frac(1, 2)));
        let auu = coeff(p, u, v, 2, 0)?;
        let avv = coeff(p, u, v, 0, 2)?;
        let aww = coeff(p, u, v, 0, 0)?;
        let auv = half(coeff(p, u, v, 1, 1)?);
        let auw = half(coeff(p, u, v, 1, 0)?);
        let avw = half(coeff(p, u, v, 0, 1)?);
        Ok(Conic([
            [auu, auv.clone(), auw.clone()],
            [auv, avv, avw.clone()],
            [auw, avw, aww],
        ]))
    }

    pub fn determinant(&self) -> Result<QuadExt> {
        let m = &self.0;
        let minor = |a: usize, b: usize, c: usize, d: usize| -> Result<QuadExt> {
            m[1][a].mul(&m[2][b])?.sub(&m[1][c].mul(&m[2][d])?)
        };
        m[0][0]
            .mul(&minor(1, 2, 2, 1)?)?
            .sub(&m[0][1].mul(&minor(0, 2, 2, 0)?)?)?
            .add(&m[0][2].mul(&minor(0, 1, 1, 0)?)?)
    }

    /// `B(p, q)` for the symmetric bilinear form.
    fn bilinear(&self, p: &[QuadExt; 3], q: &[QuadExt; 3]) -> Result<QuadExt> {
        let mut acc = QuadExt::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc.add(&self.0[i][j].mul(&p[i])?.mul(&q[j])?)?;
            }
        }
        Ok(acc)
    }
}

/// Restricts the conic to the line and classifies the two intersection
/// points by the discriminant of the resulting binary quadratic form.
pub fn tangency_multiplicity(line: &Line, conic: &Conic) -> Result<Intersection> {
    if conic.determinant()?.is_zero() {
        return Err(Error::Degenerate("conic is reducible".into()));
    }
    let (p, q) = line.points()?;
    // Q(X p + Y q) = A X^2 + 2B XY + C Y^2
    let a = conic.bilinear(&p, &p)?;
    let b = conic.bilinear(&p, &q)?;
    let c = conic.bilinear(&q, &q)?;
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::Degenerate("line is a component of the conic".into()));
    }
    let disc = b.mul(&b)?.sub(&a.mul(&c)?)?;
    if disc.is_zero() {
        // root (X : Y) = (-B : A), or (-C : B) when A = 0
        let (x, y) = if !a.is_zero() { (b.neg(), a) } else { (c.neg(), b) };
        let mut pt = [QuadExt::zero(), QuadExt::zero(), QuadExt::zero()];
        for i in 0..3 {
            pt[i] = x.mul(&p[i])?.add(&y.mul(&q[i])?)?;
        }
        return Ok(Intersection::Tangent(normalize_point(pt)?));
    }
    match disc.as_base() {
        Some(r) => {
            let k = squarefree_kernel(&r.num().mul(r.den()));
            if k.is_one() {
                Ok(Intersection::TransverseRational)
            } else {
                Ok(Intersection::TransverseConjugate { d: QuadExt::base(RatFunc::from_poly(k)) })
            }
        }
        None => Ok(Intersection::TransverseConjugate { d: disc }),
    }
}

/// Scales so that the last nonzero coordinate is one.
fn normalize_point(p: [QuadExt; 3]) -> Result<[QuadExt; 3]> {
    let Some(k) = p.iter().rposition(|x| !x.is_zero()) else {
        return Err(Error::Degenerate("zero point".into()));
    };
    let inv = p[k].inv()?;
    Ok([p[0].mul(&inv)?, p[1].mul(&inv)?, p[2].mul(&inv)?])
}

/// Convenience for affine input strings over an optional extension.
pub fn tangency_of(line: &str, conic: &str, u: &str, v: &str, field: Option<&Arc<QuadField>>) -> Result<Intersection> {
    let l = super::cover::lift_str(line, field)?;
    let c = super::cover::lift_str(conic, field)?;
    tangency_multiplicity(&Line::from_affine(&l, u, v)?, &Conic::from_affine(&c, u, v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_line() {
        let r = tangency_of("xi1", "xi2^2 - 4*xi1", "xi1", "xi2", None).unwrap();
        let Intersection::Tangent(p) = r else { panic!("{r}") };
        assert!(p[0].is_zero() && p[1].is_zero() && p[2].is_one());
    }

    #[test]
    fn mixed_line_is_linear() {
        let r = tangency_of("xi1 + xi2 + 1", "xi2^2 - 4*xi1", "xi1", "xi2", None).unwrap();
        assert!(matches!(r, Intersection::Tangent(_)), "{r}");
        assert!(tangency_of("xi1*xi2", "xi2^2 - 4*xi1", "xi1", "xi2", None).is_err());
    }

    #[test]
    fn conjugate_points() {
        let r = tangency_of("xi1 + t", "xi2^2 - 4*xi1", "xi1", "xi2", None).unwrap();
        assert_eq!(r, Intersection::TransverseConjugate { d: QuadExt::base("-t".parse().unwrap()) });
    }

    #[test]
    fn rational_points_and_infinity() {
        let r = tangency_of("xi1 - 1", "xi2^2 - 4*xi1", "xi1", "xi2", None).unwrap();
        assert_eq!(r, Intersection::TransverseRational);
        // the parabola touches the line at infinity at (0 : 1 : 0)
        let c = Conic::from_affine(&QuadExt::base("xi2^2 - 4*xi1".parse().unwrap()), "xi2", "xi1").unwrap();
        let r = tangency_multiplicity(&Line::at_infinity(), &c).unwrap();
        assert!(matches!(r, Intersection::Tangent(_)), "{r}");
    }

    #[test]
    fn degenerate_conic() {
        let r = tangency_of("x", "x*z", "x", "z", None);
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }
}
