//! Long Weierstrass curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
//! over any [`Field`], with the chord-tangent law.

use crate::arith::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct EllipticCurveLong<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Point<F> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> EllipticCurveLong<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Self {
        EllipticCurveLong { a1, a2, a3, a4, a6 }
    }

    /// `y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6)` at `(x, y)`.
    pub fn equation_at(&self, x: &F, y: &F) -> Result<F> {
        let lhs = y.times(y)?.plus(&self.a1.times(x)?.times(y)?)?.plus(&self.a3.times(y)?)?;
        let x2 = x.times(x)?;
        let rhs = x2.times(x)?.plus(&self.a2.times(&x2)?)?.plus(&self.a4.times(x)?)?.plus(&self.a6)?;
        lhs.minus(&rhs)
    }

    pub fn contains(&self, p: &Point<F>) -> Result<bool> {
        match p {
            Point::Infinity => Ok(true),
            Point::Affine(x, y) => Ok(self.equation_at(x, y)?.is_zero_elt()),
        }
    }

    /// `b2, b4, b6, b8` and the discriminant.
    pub fn discriminant(&self) -> Result<F> {
        let two = self.a1.int_like(2);
        let four = self.a1.int_like(4);
        let b2 = self.a1.times(&self.a1)?.plus(&four.times(&self.a2)?)?;
        let b4 = two.times(&self.a4)?.plus(&self.a1.times(&self.a3)?)?;
        let b6 = self.a3.times(&self.a3)?.plus(&four.times(&self.a6)?)?;
        let b8 = self
            .a1
            .times(&self.a1)?
            .times(&self.a6)?
            .plus(&four.times(&self.a2)?.times(&self.a6)?)?
            .minus(&self.a1.times(&self.a3)?.times(&self.a4)?)?
            .plus(&self.a2.times(&self.a3)?.times(&self.a3)?)?
            .minus(&self.a4.times(&self.a4)?)?;
        let t1 = b2.times(&b2)?.times(&b8)?.negated();
        let t2 = self.a1.int_like(8).times(&b4)?.times(&b4)?.times(&b4)?;
        let t3 = self.a1.int_like(27).times(&b6)?.times(&b6)?;
        let t4 = self.a1.int_like(9).times(&b2)?.times(&b4)?.times(&b6)?;
        t1.minus(&t2)?.minus(&t3)?.plus(&t4)
    }

    pub fn neg(&self, p: &Point<F>) -> Result<Point<F>> {
        match p {
            Point::Infinity => Ok(Point::Infinity),
            Point::Affine(x, y) => {
                let y2 = y.negated().minus(&self.a1.times(x)?)?.minus(&self.a3)?;
                Ok(Point::Affine(x.clone(), y2))
            }
        }
    }

    /// Chord-tangent addition; both inputs are checked to lie on the curve.
    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        if !self.contains(p)? || !self.contains(q)? {
            return Err(Error::OffCurve);
        }
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return Ok(q.clone()),
            (_, Point::Infinity) => return Ok(p.clone()),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1.minus(x2)?.is_zero_elt() {
            let denom = y1.plus(y2)?.plus(&self.a1.times(x2)?)?.plus(&self.a3)?;
            if denom.is_zero_elt() {
                return Ok(Point::Infinity);
            }
            let three = x1.int_like(3);
            let two = x1.int_like(2);
            let x1sq = x1.times(x1)?;
            let num_l = three
                .times(&x1sq)?
                .plus(&two.times(&self.a2)?.times(x1)?)?
                .plus(&self.a4)?
                .minus(&self.a1.times(y1)?)?;
            let num_n = x1sq
                .times(x1)?
                .negated()
                .plus(&self.a4.times(x1)?)?
                .plus(&two.times(&self.a6)?)?
                .minus(&self.a3.times(y1)?)?;
            let d = two.times(y1)?.plus(&self.a1.times(x1)?)?.plus(&self.a3)?;
            (num_l.divide(&d)?, num_n.divide(&d)?)
        } else {
            let dx = x2.minus(x1)?;
            let lambda = y2.minus(y1)?.divide(&dx)?;
            let nu = y1.times(x2)?.minus(&y2.times(x1)?)?.divide(&dx)?;
            (lambda, nu)
        };
        let x3 = lambda
            .times(&lambda)?
            .plus(&self.a1.times(&lambda)?)?
            .minus(&self.a2)?
            .minus(x1)?
            .minus(x2)?;
        let y3 = lambda.plus(&self.a1)?.times(&x3)?.negated().minus(&nu)?.minus(&self.a3)?;
        Ok(Point::Affine(x3, y3))
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        self.add(p, &self.neg(q)?)
    }
}

/// `P + Q` on `E`; see [`EllipticCurveLong::add`].
pub fn weierstrass_add<F: Field>(e: &EllipticCurveLong<F>, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
    e.add(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Fp, Rational};

    fn curve_x3_plus_1() -> EllipticCurveLong<Rational> {
        EllipticCurveLong::new(rat(0), rat(0), rat(0), rat(0), rat(1))
    }

    #[test]
    fn doubling_by_hand() {
        // y^2 = x^3 + 1, (2, 3) + (2, 3): lambda = 3*4/6 = 2, x3 = 4 - 4 = 0, y3 = -(2*(0-2)+3) = 1
        let e = curve_x3_plus_1();
        let p = Point::Affine(rat(2), rat(3));
        assert_eq!(weierstrass_add(&e, &p, &p).unwrap(), Point::Affine(rat(0), rat(1)));
    }

    #[test]
    fn identity_and_inverse() {
        let e = curve_x3_plus_1();
        let p = Point::Affine(rat(2), rat(3));
        assert_eq!(e.add(&p, &Point::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.neg(&p).unwrap()).unwrap(), Point::Infinity);
    }

    #[test]
    fn off_curve_rejected() {
        let e = curve_x3_plus_1();
        assert_eq!(e.add(&Point::Affine(rat(1), rat(1)), &Point::Infinity), Err(Error::OffCurve));
    }

    #[test]
    fn associativity_exhaustive_small_field() {
        // y^2 + xy + y = x^3 - x^2 + 3x + 1 over F_11, every triple of points.
        let p = 11;
        let f = |n: i64| Fp::from_i64(n, p);
        let e = EllipticCurveLong::new(f(1), f(-1), f(1), f(3), f(1));
        assert!(!e.discriminant().unwrap().is_zero_elt());
        let mut pts = vec![Point::Infinity];
        for x in 0..p {
            for y in 0..p {
                let pt = Point::Affine(f(x as i64), f(y as i64));
                if e.contains(&pt).unwrap() {
                    pts.push(pt);
                }
            }
        }
        assert!(pts.len() > 4);
        for a in &pts {
            for b in &pts {
                let ab = e.add(a, b).unwrap();
                assert_eq!(ab, e.add(b, a).unwrap());
                for c in &pts {
                    let lhs = e.add(&ab, c).unwrap();
                    let rhs = e.add(a, &e.add(b, c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
