//! Double covers `c*w^2 = F(u, v)` of the plane (or of the line) and their
//! function fields `K(u, v)[w]/(w^2 - F/c)`.

use std::fmt;
use std::sync::Arc;

use crate::arith::gcd::gcd_any;
use crate::arith::{Field, Poly, QuadExt, QuadField, RatFunc, Rational};
use crate::error::{Error, Result};

/// Affine model `twist * cover^2 = branch(chart)`.
#[derive(Clone)]
pub struct DoubleCover {
    name: String,
    chart: Vec<String>,
    cover: String,
    twist: QuadExt,
    branch: QuadExt,
    wsq: QuadExt,
    dlog: Vec<QuadExt>,
}

impl DoubleCover {
    pub fn new(name: &str, chart: &[&str], cover: &str, twist: QuadExt, branch: QuadExt) -> Result<Arc<Self>> {
        if chart.is_empty() || chart.len() > 2 {
            return Err(Error::Contract(format!("{name}: chart must have one or two variables")));
        }
        if twist.is_zero() {
            return Err(Error::Degenerate(format!("{name}: zero twist")));
        }
        if branch.is_zero() {
            return Err(Error::Degenerate(format!("{name}: zero branch polynomial")));
        }
        if chart.iter().any(|v| twist.uses_var(v)) || twist.uses_var(cover) || branch.uses_var(cover) {
            return Err(Error::Contract(format!("{name}: twist must be constant and the branch free of the cover variable")));
        }
        let wsq = branch.div(&twist)?;
        // d(w)/du = F_u/(2F) * w
        let two_f = branch.scale(&RatFunc::from_int(2));
        let dlog = chart
            .iter()
            .map(|v| branch.derivative(v).div(&two_f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(DoubleCover {
            name: name.to_string(),
            chart: chart.iter().map(|s| s.to_string()).collect(),
            cover: cover.to_string(),
            twist,
            branch,
            wsq,
            dlog,
        }))
    }

    /// Parses twist and branch; `field` supplies the generator of any
    /// quadratic extension appearing in the coefficients.
    pub fn parse(
        name: &str,
        chart: &[&str],
        cover: &str,
        twist: &str,
        branch: &str,
        field: Option<&Arc<QuadField>>,
    ) -> Result<Arc<Self>> {
        let c = lift_str(twist, field)?;
        let f = lift_str(branch, field)?;
        Self::new(name, chart, cover, c, f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn chart(&self) -> &[String] {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.len()
    }

    pub fn cover(&self) -> &str {
        &self.cover
    }

    pub fn twist(&self) -> &QuadExt {
        &self.twist
    }

    pub fn branch(&self) -> &QuadExt {
        &self.branch
    }

    /// `w^2` as an element of the chart field.
    pub fn w_squared(&self) -> &QuadExt {
        &self.wsq
    }

    pub fn field(&self) -> Option<&Arc<QuadField>> {
        self.twist.field().or(self.branch.field())
    }

    pub fn renamed(&self, name: &str) -> Arc<Self> {
        let mut c = self.clone();
        c.name = name.to_string();
        Arc::new(c)
    }

    /// Structural equality of the defining data; names are labels only.
    pub fn same_model(&self, other: &DoubleCover) -> bool {
        self.chart == other.chart && self.cover == other.cover && self.twist == other.twist && self.branch == other.branch
    }

    /// Squarefreeness of `F` in the chart variables: no common factor of
    /// `F` and its chart partials involves a chart variable. Only checked
    /// for branch polynomials over the base field.
    pub fn is_squarefree(&self) -> Option<bool> {
        let f = self.branch.as_base()?;
        let num = f.num();
        let mut g = num.clone();
        for v in &self.chart {
            g = gcd_any(&g, &num.derivative(v));
        }
        Some(!self.chart.iter().any(|v| g.uses_var(v)))
    }

    /// The model with every coefficient conjugated; `self` when unchanged.
    pub fn conjugate(self: &Arc<Self>) -> Arc<Self> {
        let twist = self.twist.conj();
        let branch = self.branch.conj();
        if twist == self.twist && branch == self.branch {
            return self.clone();
        }
        let name = conj_name(&self.name);
        DoubleCover::new(&name, &self.chart_refs(), &self.cover, twist, branch).expect("conjugate of a valid model")
    }

    pub fn specialize(&self, var: &str, value: &Rational) -> Result<Arc<Self>> {
        DoubleCover::new(
            &self.name,
            &self.chart_refs(),
            &self.cover,
            self.twist.specialize(var, value)?,
            self.branch.specialize(var, value)?,
        )
    }

    pub(crate) fn chart_refs(&self) -> Vec<&str> {
        self.chart.iter().map(String::as_str).collect()
    }

    pub fn chart_fn(self: &Arc<Self>, i: usize) -> SurfaceFunction {
        SurfaceFunction::from_quad(self, QuadExt::base(RatFunc::var(&self.chart[i])))
    }

    pub fn cover_fn(self: &Arc<Self>) -> SurfaceFunction {
        SurfaceFunction { a0: QuadExt::zero(), a1: QuadExt::one(), host: self.clone() }
    }

    /// Reads a rational function that may contain the cover variable and a
    /// field generator, reducing `w^2 -> F/c`.
    pub fn function(self: &Arc<Self>, expr: &str, field: Option<&Arc<QuadField>>) -> Result<SurfaceFunction> {
        let r: RatFunc = expr.parse()?;
        self.reduce(&r, field)
    }

    pub fn reduce(self: &Arc<Self>, r: &RatFunc, field: Option<&Arc<QuadField>>) -> Result<SurfaceFunction> {
        let num = self.reduce_poly(r.num(), field)?;
        if !r.den().uses_var(&self.cover) && field.is_none_or(|f| !r.den().uses_var(f.name())) {
            return num.scale(&QuadExt::base(RatFunc::from_poly(r.den().clone()).inv()?));
        }
        let den = self.reduce_poly(r.den(), field)?;
        num.div(&den)
    }

    fn reduce_poly(self: &Arc<Self>, p: &Poly, field: Option<&Arc<QuadField>>) -> Result<SurfaceFunction> {
        let coeffs = p.as_univariate(&self.cover);
        let mut parts = [QuadExt::zero(), QuadExt::zero()];
        let mut wpow = QuadExt::one();
        for (k, c) in coeffs.iter().enumerate() {
            if k >= 2 && k % 2 == 0 {
                wpow = wpow.mul(&self.wsq)?;
            }
            if c.is_zero() {
                continue;
            }
            let lifted = lift(&RatFunc::from_poly(c.clone()), field)?;
            parts[k % 2] = parts[k % 2].add(&lifted.mul(&wpow)?)?;
        }
        let [a0, a1] = parts;
        Ok(SurfaceFunction { a0, a1, host: self.clone() })
    }
}

fn lift(r: &RatFunc, field: Option<&Arc<QuadField>>) -> Result<QuadExt> {
    match field {
        Some(f) => f.lift(r),
        None => Ok(QuadExt::base(r.clone())),
    }
}

pub(crate) fn lift_str(s: &str, field: Option<&Arc<QuadField>>) -> Result<QuadExt> {
    lift(&s.parse()?, field)
}

pub(crate) fn conj_name(name: &str) -> String {
    match name.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{name}'"),
    }
}

impl PartialEq for DoubleCover {
    fn eq(&self, other: &Self) -> bool {
        self.same_model(other)
    }
}

impl fmt::Debug for DoubleCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleCover({self})")
    }
}

impl fmt::Display for DoubleCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({})*{}^2 = {}", self.name, self.twist, self.cover, self.branch)
    }
}

/// `a0 + a1*w` on a double cover.
#[derive(Clone)]
pub struct SurfaceFunction {
    a0: QuadExt,
    a1: QuadExt,
    host: Arc<DoubleCover>,
}

impl SurfaceFunction {
    pub fn new(host: &Arc<DoubleCover>, a0: QuadExt, a1: QuadExt) -> Self {
        SurfaceFunction { a0, a1, host: host.clone() }
    }

    pub fn from_quad(host: &Arc<DoubleCover>, a0: QuadExt) -> Self {
        SurfaceFunction { a0, a1: QuadExt::zero(), host: host.clone() }
    }

    pub fn constant(host: &Arc<DoubleCover>, c: Rational) -> Self {
        Self::from_quad(host, QuadExt::base(RatFunc::constant(c)))
    }

    pub fn a0(&self) -> &QuadExt {
        &self.a0
    }

    pub fn a1(&self) -> &QuadExt {
        &self.a1
    }

    pub fn host(&self) -> &Arc<DoubleCover> {
        &self.host
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn has_cover_part(&self) -> bool {
        !self.a1.is_zero()
    }

    /// The element as a constant of the base field, if it is one.
    pub fn constant_value(&self) -> Option<&QuadExt> {
        if self.a1.is_zero() && !self.host.chart.iter().any(|v| self.a0.uses_var(v)) {
            Some(&self.a0)
        } else {
            None
        }
    }

    pub fn field(&self) -> Option<&Arc<QuadField>> {
        self.a0.field().or(self.a1.field())
    }

    fn same_host(&self, other: &SurfaceFunction) -> Result<()> {
        if Arc::ptr_eq(&self.host, &other.host) || self.host.same_model(&other.host) {
            Ok(())
        } else {
            Err(Error::ChartMismatch(format!("{} vs {}", self.host.name, other.host.name)))
        }
    }

    pub fn add(&self, other: &SurfaceFunction) -> Result<SurfaceFunction> {
        self.same_host(other)?;
        Ok(SurfaceFunction { a0: self.a0.add(&other.a0)?, a1: self.a1.add(&other.a1)?, host: self.host.clone() })
    }

    pub fn sub(&self, other: &SurfaceFunction) -> Result<SurfaceFunction> {
        self.same_host(other)?;
        Ok(SurfaceFunction { a0: self.a0.sub(&other.a0)?, a1: self.a1.sub(&other.a1)?, host: self.host.clone() })
    }

    pub fn neg(&self) -> SurfaceFunction {
        SurfaceFunction { a0: self.a0.neg(), a1: self.a1.neg(), host: self.host.clone() }
    }

    pub fn mul(&self, other: &SurfaceFunction) -> Result<SurfaceFunction> {
        self.same_host(other)?;
        let (a0, a1, b0, b1) = (&self.a0, &self.a1, &other.a0, &other.a1);
        let c0 = if a1.is_zero() || b1.is_zero() {
            a0.mul(b0)?
        } else {
            a0.mul(b0)?.add(&a1.mul(b1)?.mul(&self.host.wsq)?)?
        };
        let c1 = a0.mul(b1)?.add(&a1.mul(b0)?)?;
        Ok(SurfaceFunction { a0: c0, a1: c1, host: self.host.clone() })
    }

    pub fn scale(&self, c: &QuadExt) -> Result<SurfaceFunction> {
        Ok(SurfaceFunction { a0: self.a0.mul(c)?, a1: self.a1.mul(c)?, host: self.host.clone() })
    }

    /// `a0^2 - a1^2 F/c`, an element of the chart field.
    pub fn norm(&self) -> Result<QuadExt> {
        if self.a1.is_zero() {
            return self.a0.mul(&self.a0);
        }
        self.a0.mul(&self.a0)?.sub(&self.a1.mul(&self.a1)?.mul(&self.host.wsq)?)
    }

    pub fn inv(&self) -> Result<SurfaceFunction> {
        let n = self.norm()?;
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = n.inv()?;
        Ok(SurfaceFunction { a0: self.a0.mul(&ninv)?, a1: self.a1.neg().mul(&ninv)?, host: self.host.clone() })
    }

    pub fn div(&self, other: &SurfaceFunction) -> Result<SurfaceFunction> {
        if other.a1.is_zero() {
            self.same_host(other)?;
            let inv = other.a0.inv()?;
            return self.scale(&inv);
        }
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<SurfaceFunction> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = SurfaceFunction::constant(&self.host, Rational::from_integer(1.into()));
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

    /// Partial derivative in a chart variable, using `2 c w dw = dF`.
    pub fn derivative(&self, var: &str) -> Result<SurfaceFunction> {
        let i = self
            .host
            .chart
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::ChartMismatch(format!("{var} is not a chart variable of {}", self.host.name)))?;
        let a0 = self.a0.derivative(var);
        let mut a1 = self.a1.derivative(var);
        if !self.a1.is_zero() {
            a1 = a1.add(&self.a1.mul(&self.host.dlog[i])?)?;
        }
        Ok(SurfaceFunction { a0, a1, host: self.host.clone() })
    }

    /// Conjugates every coefficient; the result lives on the conjugate model.
    pub fn conj(&self) -> SurfaceFunction {
        SurfaceFunction { a0: self.a0.conj(), a1: self.a1.conj(), host: self.host.conjugate() }
    }

    pub fn rehost(&self, host: &Arc<DoubleCover>) -> SurfaceFunction {
        SurfaceFunction { a0: self.a0.clone(), a1: self.a1.clone(), host: host.clone() }
    }

    pub fn specialize(&self, var: &str, value: &Rational, host: &Arc<DoubleCover>) -> Result<SurfaceFunction> {
        Ok(SurfaceFunction { a0: self.a0.specialize(var, value)?, a1: self.a1.specialize(var, value)?, host: host.clone() })
    }

    /// Evaluation mod p at a point of the cover; `assign` must cover the
    /// chart variables, parameters and any field generator.
    pub fn eval_mod(&self, assign: &dyn Fn(&str) -> Option<u64>, w: u64, p: u64) -> Result<u64> {
        let a0 = self.a0.eval_mod(assign, p)?;
        if self.a1.is_zero() {
            return Ok(a0);
        }
        let a1 = self.a1.eval_mod(assign, p)?;
        Ok(((a0 as u128 + a1 as u128 * w as u128) % p as u128) as u64)
    }

    /// The element written as a rational function in chart, cover and
    /// generator variables.
    pub fn to_ratfunc(&self) -> RatFunc {
        let w = RatFunc::var(&self.host.cover);
        self.a0.to_ratfunc().add(&self.a1.to_ratfunc().mul(&w))
    }
}

impl PartialEq for SurfaceFunction {
    fn eq(&self, other: &Self) -> bool {
        self.a0 == other.a0 && self.a1 == other.a1 && self.host.same_model(&other.host)
    }
}

impl fmt::Display for SurfaceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a0.is_zero(), self.a1.is_zero()) {
            (_, true) => write!(f, "{}", self.a0),
            (true, false) => write!(f, "({})*{}", self.a1, self.host.cover),
            (false, false) => write!(f, "{} + ({})*{}", self.a0, self.a1, self.host.cover),
        }
    }
}

impl fmt::Debug for SurfaceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SurfaceFunction({self} on {})", self.host.name)
    }
}

impl Field for SurfaceFunction {
    fn zero_like(&self) -> Self {
        SurfaceFunction::from_quad(&self.host, QuadExt::zero())
    }
    fn one_like(&self) -> Self {
        SurfaceFunction::from_quad(&self.host, QuadExt::one())
    }
    fn int_like(&self, n: i64) -> Self {
        SurfaceFunction::from_quad(&self.host, QuadExt::from_int(n))
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

    fn x_t() -> Arc<DoubleCover> {
        DoubleCover::parse("X_t", &["x", "z"], "y", "1", "x*z*(x+1)*(z+1)*(x+z*t)", None).unwrap()
    }

    #[test]
    fn cover_variable_squares_to_branch() {
        let x = x_t();
        let y = x.cover_fn();
        let f = x.function("x*z*(x+1)*(z+1)*(x+z*t)", None).unwrap();
        assert_eq!(y.mul(&y).unwrap(), f);
        assert_eq!(x.function("y^3", None).unwrap(), f.mul(&y).unwrap());
    }

    #[test]
    fn inverse_via_norm() {
        let x = x_t();
        let g = x.function("x + y", None).unwrap();
        let one = g.mul(&g.inv().unwrap()).unwrap();
        assert_eq!(one, SurfaceFunction::from_quad(&x, QuadExt::one()));
    }

    #[test]
    fn derivative_of_cover_variable() {
        let x = x_t();
        // d(y^2)/dx = dF/dx
        let y = x.cover_fn();
        let lhs = y.mul(&y).unwrap().derivative("x").unwrap();
        let two_y_dy = y.mul(&y.derivative("x").unwrap()).unwrap().scale(&QuadExt::from_int(2)).unwrap();
        assert_eq!(lhs, two_y_dy);
    }

    #[test]
    fn squarefree_branch() {
        assert_eq!(x_t().is_squarefree(), Some(true));
        let bad = DoubleCover::parse("bad", &["x", "z"], "y", "1", "x^2*z*(z+1)", None).unwrap();
        assert_eq!(bad.is_squarefree(), Some(false));
    }

    #[test]
    fn rejects_zero_twist() {
        assert!(DoubleCover::parse("z", &["x"], "y", "0", "x", None).is_err());
    }
}
