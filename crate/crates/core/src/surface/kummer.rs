//! Symmetric-function calculus for Kummer surfaces of Jacobians of genus-2
//! curves and of products of elliptic curves.
//!
//! On `C x C` with coordinates `(x1, y1, x2, y2)` the Kummer surface of `JC`
//! has coordinates `xi = x1 x2`, `zeta = x1 + x2`, `eta = y1 y2`.

use std::sync::Arc;

use super::cover::{DoubleCover, SurfaceFunction};
use super::forms::{pullback_one_form, OneForm};
use super::map::RationalMap;
use crate::arith::{Poly, QuadExt, QuadField, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::report::Report;

const X1: &str = "_x1";
const X2: &str = "_x2";
const Y1: &str = "_y1";
const Y2: &str = "_y2";

fn power_sums(xi: &Poly, zeta: &Poly, n: usize) -> Vec<Poly> {
    let mut p = vec![Poly::from_int(2), zeta.clone()];
    for k in 2..=n.max(1) {
        let next = zeta.mul(&p[k - 1]).sub(&xi.mul(&p[k - 2]));
        p.push(next);
    }
    p
}

/// Rewrites a polynomial symmetric in `a, b` as a polynomial in
/// `xi = ab`, `zeta = a + b`; `None` if it is not symmetric.
pub fn symmetric_reduce(p: &Poly, a: &str, b: &str, xi: &str, zeta: &str) -> Option<Poly> {
    let rows = p.as_univariate(a);
    let grid: Vec<Vec<Poly>> = rows.iter().map(|r| r.as_univariate(b)).collect();
    let get = |i: usize, j: usize| grid.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(Poly::zero);
    let n = grid.len().max(grid.iter().map(Vec::len).max().unwrap_or(0));
    let xi_p = Poly::var(xi);
    let zeta_p = Poly::var(zeta);
    let ps = power_sums(&xi_p, &zeta_p, n);
    let mut out = Poly::zero();
    for i in 0..n {
        for j in 0..=i {
            let c = get(i, j);
            if c != get(j, i) {
                return None;
            }
            if c.is_zero() {
                continue;
            }
            let term = if i == j { xi_p.pow(i as u32) } else { xi_p.pow(j as u32).mul(&ps[i - j]) };
            out = out.add(&c.mul(&term));
        }
    }
    Some(out)
}

/// The unique `F` with `f(x1) f(x2) = F(x1 x2, x1 + x2)`, checked by
/// re-substitution.
pub fn symmetrize_product(f: &Poly, x: &str, xi: &str, zeta: &str) -> Result<Poly> {
    let f1 = f.subst(&[(x.to_string(), Poly::var(X1))]);
    let f2 = f.subst(&[(x.to_string(), Poly::var(X2))]);
    let prod = f1.mul(&f2);
    let big_f = symmetric_reduce(&prod, X1, X2, xi, zeta).expect("f(x1)f(x2) is symmetric");
    let back = big_f.subst(&[
        (xi.to_string(), Poly::var(X1).mul(&Poly::var(X2))),
        (zeta.to_string(), Poly::var(X1).add(&Poly::var(X2))),
    ]);
    if back != prod {
        return Err(Error::Contract("symmetrization failed re-substitution".into()));
    }
    Ok(big_f)
}

/// `c * eta^2 = F(xi, zeta)` for the genus-2 curve `y^2 = f(x)`.
pub fn kummer_from_genus2(name: &str, f: &Poly, x: &str, twist: QuadExt, field: Option<&Arc<QuadField>>) -> Result<Arc<DoubleCover>> {
    let deg = f.degree_in(x);
    if f.vars().iter().any(|v| v != x && field.is_some_and(|g| g.name() == v)) {
        return Err(Error::Contract("f must be written over the base field".into()));
    }
    if deg != 5 && deg != 6 {
        return Err(Error::Contract(format!("genus-2 curve needs degree 5 or 6, got {deg}")));
    }
    let g = crate::arith::gcd::gcd_any(f, &f.derivative(x));
    if g.uses_var(x) {
        return Err(Error::NotSquarefree);
    }
    let big_f = symmetrize_product(f, x, "xi", "zeta")?;
    DoubleCover::new(name, &["xi", "zeta"], "eta", twist, QuadExt::base(RatFunc::from_poly(big_f)))
}

/// Replaces `y^2` by `value` for each `(y, value)`, leaving every `y` of
/// degree at most one.
pub fn reduce_squares(p: &Poly, rels: &[(&str, &Poly)]) -> Poly {
    let mut out = p.clone();
    for (y, val) in rels {
        if !out.uses_var(y) {
            continue;
        }
        let coeffs = out.as_univariate(y);
        let mut even = Poly::zero();
        let mut odd = Poly::zero();
        let mut pow = Poly::one();
        for (k, c) in coeffs.iter().enumerate() {
            if k >= 2 && k % 2 == 0 {
                pow = pow.mul(val);
            }
            if k % 2 == 0 {
                even = even.add(&c.mul(&pow));
            } else {
                odd = odd.add(&c.mul(&pow));
            }
        }
        out = even.add(&odd.mul(&Poly::var(y)));
    }
    out
}

/// Pullback data of a quotient map `alpha: C -> E` of a genus-2 curve:
/// `alpha^*(dxi/eta) = (a x + b) dx / y`.
#[derive(Clone, Debug)]
pub struct DifferentialPullback {
    pub a: QuadExt,
    pub b: QuadExt,
}

/// Reads off `(a, b)` in `alpha^* omega = (a x + b) dx / y` with `omega` the
/// standard form on the target curve.
pub fn differential_pullback(alpha: &RationalMap) -> Result<DifferentialPullback> {
    let c = alpha.source();
    if c.dim() != 1 || alpha.target().dim() != 1 {
        return Err(Error::Contract("differential pullback needs maps of curves".into()));
    }
    let omega = OneForm::standard(alpha.target())?;
    let g = pullback_one_form(alpha, &omega)?;
    let h = g.coeff().mul(&c.cover_fn())?;
    if h.has_cover_part() {
        return Err(Error::Contract(format!("{}: pullback is not of the form p(x) dx/y", alpha.name())));
    }
    let x = &c.chart()[0];
    let (a, b) = linear_coefficients(h.a0(), x)?;
    Ok(DifferentialPullback { a, b })
}

fn linear_coefficients(e: &QuadExt, x: &str) -> Result<(QuadExt, QuadExt)> {
    let comp = |r: &RatFunc| -> Result<(RatFunc, RatFunc)> {
        if r.den().uses_var(x) || r.num().degree_in(x) > 1 {
            return Err(Error::Contract(format!("{r} is not linear in {x}")));
        }
        let cs = r.num().as_univariate(x);
        let den = RatFunc::from_poly(r.den().clone());
        let at = |k: usize| cs.get(k).map(|p| RatFunc::from_poly(p.clone()).div(&den)).unwrap_or(Ok(RatFunc::zero()));
        Ok((at(1)?, at(0)?))
    };
    let (a0, b0) = comp(e.a0())?;
    let (a1, b1) = comp(e.a1())?;
    match e.field() {
        None => Ok((QuadExt::base(a0), QuadExt::base(b0))),
        Some(f) => Ok((QuadExt::new(a0, a1, f), QuadExt::new(b0, b1, f))),
    }
}

/// Result of [`split_jacobian_constant`].
#[derive(Clone, Debug)]
pub struct SplitJacobian {
    pub first: DifferentialPullback,
    pub second: DifferentialPullback,
    pub d: QuadExt,
    /// `psi^*(omega_1 ∧ omega_2) = d (x1 - x2) dx1∧dx2/(y1 y2)` on `C x C`.
    pub wedge: Report,
}

/// `d = a1 b2 - a2 b1` for two quotient maps of a genus-2 curve, with the
/// symbolic wedge identity on `C x C` checked.
pub fn split_jacobian_constant(alpha1: &RationalMap, alpha2: &RationalMap) -> Result<SplitJacobian> {
    if !alpha1.source().same_model(alpha2.source()) {
        return Err(Error::ChartMismatch("quotient maps start on different curves".into()));
    }
    let p1 = differential_pullback(alpha1)?;
    let p2 = differential_pullback(alpha2)?;
    let d = p1.a.mul(&p2.b)?.sub(&p2.a.mul(&p1.b)?)?;
    if d.is_zero() {
        return Err(Error::DependentPullbacks);
    }
    // (a1 x1 + b1)(a2 x2 + b2) - (a1 x2 + b1)(a2 x1 + b2)
    let x1 = QuadExt::base(RatFunc::var(X1));
    let x2 = QuadExt::base(RatFunc::var(X2));
    let lin = |p: &DifferentialPullback, x: &QuadExt| -> Result<QuadExt> { p.a.mul(x)?.add(&p.b) };
    let wedge = lin(&p1, &x1)?.mul(&lin(&p2, &x2)?)?.sub(&lin(&p1, &x2)?.mul(&lin(&p2, &x1)?)?)?;
    let expected = d.mul(&x1.sub(&x2)?)?;
    let report = Report::check(
        "psi^*(w1∧w2) = d (x1 - x2) dx1∧dx2/(y1 y2) on C x C",
        wedge.to_string().replace(X1, "x1").replace(X2, "x2"),
        expected.to_string().replace(X1, "x1").replace(X2, "x2"),
        wedge == expected,
    );
    Ok(SplitJacobian { first: p1, second: p2, d, wedge: report })
}

/// The factor `k` with `(x1 x2, x1 + x2, y1 y2)^*(dxi∧dzeta/eta)
/// = k (x1 - x2) dx1∧dx2/(y1 y2)`, computed from the Jacobian of the
/// symmetric functions.
pub fn kummer_form_factor() -> Rational {
    let xi = Poly::var(X1).mul(&Poly::var(X2));
    let zeta = Poly::var(X1).add(&Poly::var(X2));
    let jac = xi.derivative(X1).mul(&zeta.derivative(X2)).sub(&xi.derivative(X2).mul(&zeta.derivative(X1)));
    let diff = Poly::var(X1).sub(&Poly::var(X2));
    let q = jac.div_exact(&diff).expect("Jacobian is a multiple of x1 - x2");
    q.constant_value().expect("constant factor")
}

/// Functions on `C x C` written as extension elements over
/// `Q(params)(x1, x2, y1, y2)` with numerators reduced by `y_i^2 = f(x_i)`.
struct ProductCalculus {
    field: Option<Arc<QuadField>>,
    f1: Poly,
    f2: Poly,
}

impl ProductCalculus {
    fn on_factor(&self, g: &SurfaceFunction, x: &str, xv: &str, yv: &str) -> Result<QuadExt> {
        let sub = [(x.to_string(), RatFunc::var(xv))];
        let a0 = g.a0().subst(&sub)?;
        let a1 = g.a1().subst(&sub)?;
        a0.add(&a1.scale(&RatFunc::var(yv)))
    }

    fn reduce(&self, e: &QuadExt) -> Result<QuadExt> {
        let rels = [(Y1, &self.f1), (Y2, &self.f2)];
        let red = |r: &RatFunc| -> Result<RatFunc> {
            if r.den().uses_var(Y1) || r.den().uses_var(Y2) {
                return Err(Error::Contract("unexpected y in a denominator".into()));
            }
            RatFunc::new(reduce_squares(r.num(), &rels), r.den().clone())
        };
        e.map_base(red)
    }

    /// Reduces and moves every `y` out of the denominators.
    fn clear_y(&self, e: &QuadExt) -> Result<QuadExt> {
        let rels = [(Y1, &self.f1), (Y2, &self.f2)];
        let flip = |p: &Poly, y: &str| p.subst(&[(y.to_string(), Poly::var(y).neg())]);
        let clear = |r: &RatFunc| -> Result<RatFunc> {
            let (mut num, mut den) = (r.num().clone(), r.den().clone());
            for y in [Y1, Y2] {
                if den.uses_var(y) {
                    let conj = flip(&den, y);
                    num = num.mul(&conj);
                    den = den.mul(&conj);
                }
            }
            RatFunc::new(reduce_squares(&num, &rels), reduce_squares(&den, &rels))
        };
        e.map_base(clear)
    }

    /// `d/dx_i` on `C x C`, with `dy_i/dx_i = f'(x_i) / (2 y_i)`.
    fn derivative(&self, e: &QuadExt, i: usize) -> Result<QuadExt> {
        let (x, y, f) = if i == 1 { (X1, Y1, &self.f1) } else { (X2, Y2, &self.f2) };
        let dy = RatFunc::from_poly(f.derivative(x)).div(&RatFunc::from_poly(Poly::var(y).scale(&Rational::from_integer(2.into()))))?;
        let out = e.derivative(x).add(&e.derivative(y).mul(&QuadExt::base(dy))?)?;
        self.clear_y(&out)
    }

    /// Rewrites an `S_2`- and `[-1]`-invariant element in `(xi, zeta, eta)`.
    fn to_kummer(&self, e: &QuadExt) -> Result<QuadExt> {
        let e = self.reduce(e)?;
        let conv = |r: &RatFunc| -> Result<RatFunc> {
            let num = eta_form(r.num())?;
            let den = eta_form(r.den())?;
            let swap = |p: &Poly| p.subst(&[(X1.to_string(), Poly::var(X2)), (X2.to_string(), Poly::var(X1))]);
            let (num, den) = if swap(&den) == den {
                (num, den)
            } else if swap(&den) == den.neg() {
                let d = Poly::var(X1).sub(&Poly::var(X2));
                (num.mul(&d), den.mul(&d))
            } else {
                return Err(Error::Contract("denominator is not symmetric".into()));
            };
            let n = symmetric_reduce(&num, X1, X2, "xi", "zeta").ok_or_else(|| Error::Contract("not symmetric".into()))?;
            let d = symmetric_reduce(&den, X1, X2, "xi", "zeta").ok_or_else(|| Error::Contract("not symmetric".into()))?;
            RatFunc::new(n, d)
        };
        match &self.field {
            Some(f) => {
                let a0 = conv(e.a0())?;
                let a1 = conv(e.a1())?;
                Ok(QuadExt::new(a0, a1, f))
            }
            None => Ok(QuadExt::base(conv(e.a0())?)),
        }
    }
}

/// Replaces `y1 y2` by `eta`; odd monomials in the `y`'s are not invariant.
fn eta_form(p: &Poly) -> Result<Poly> {
    let rows = p.as_univariate(Y1);
    let mut out = Poly::zero();
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.as_univariate(Y2).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match (i, j) {
                (0, 0) => out = out.add(c),
                (1, 1) => out = out.add(&c.mul(&Poly::var("eta"))),
                _ => return Err(Error::Contract("term odd in y1 or y2 survives".into())),
            }
        }
    }
    Ok(out)
}

/// The coefficients `(A, B)` of `w^2 = A u^3 + B u^2 + ...` on a cubic model.
fn cubic_leading(e: &DoubleCover) -> Result<(QuadExt, QuadExt)> {
    let g = e.w_squared();
    let u = &e.chart()[0];
    let parts = [g.a0(), g.a1()];
    let mut coeffs: Vec<Vec<RatFunc>> = Vec::new();
    for r in parts {
        if r.den().uses_var(u) || r.num().vars().iter().any(|v| v != u && e.chart().contains(v)) {
            return Err(Error::Contract(format!("{}: branch is not polynomial in {u}", e.name())));
        }
        let den = RatFunc::from_poly(r.den().clone());
        let cs = r.num().as_univariate(u);
        coeffs.push(cs.iter().map(|c| RatFunc::from_poly(c.clone()).div(&den)).collect::<Result<_>>()?);
    }
    if coeffs.iter().map(Vec::len).max() != Some(4) {
        return Err(Error::Contract(format!("{}: branch is not a cubic", e.name())));
    }
    let pick = |k: usize| -> QuadExt {
        let c = |i: usize| coeffs[i].get(k).cloned().unwrap_or_else(RatFunc::zero);
        match g.field() {
            None => QuadExt::base(c(0)),
            Some(f) => QuadExt::new(c(0), c(1), f),
        }
    };
    Ok((pick(3), pick(2)))
}

/// `(alpha(P) + alpha(Q))` on a cubic `w^2 = A u^3 + B u^2 + ...`, from the
/// images of `P` and `Q`.
fn chord_sum(
    a: &QuadExt,
    b: &QuadExt,
    (u1, w1): (&QuadExt, &QuadExt),
    (u2, w2): (&QuadExt, &QuadExt),
) -> Result<(QuadExt, QuadExt)> {
    let lambda = w2.sub(w1)?.div(&u2.sub(u1)?)?;
    let nu = w1.sub(&lambda.mul(u1)?)?;
    let u3 = lambda.mul(&lambda)?.sub(b)?.div(a)?.sub(u1)?.sub(u2)?;
    let w3 = lambda.mul(&u3)?.add(&nu)?.neg();
    Ok((u3, w3))
}

/// The rational map `Km(JC) -> Km(E1 x E2)` induced by
/// `(P, Q) -> (alpha1(P) + alpha1(Q), alpha2(P) + alpha2(Q))`.
///
/// `km_jc` must be `eta^2 = F(xi, zeta)` for the source curve of both maps.
/// The target has chart `(x1, x2)` and must satisfy `w^2 = g1(x1) g2(x2)`
/// where `w^2 = g_i` are the cubic models of the two elliptic curves; its
/// cover coordinate is the product of the two `w`'s.
pub fn kummer_sum_map(
    name: &str,
    alpha1: &RationalMap,
    alpha2: &RationalMap,
    km_jc: &Arc<DoubleCover>,
    target: &Arc<DoubleCover>,
) -> Result<RationalMap> {
    let c = alpha1.source();
    if c.dim() != 1 || !c.twist().is_one() {
        return Err(Error::Contract("source must be a curve y^2 = f(x)".into()));
    }
    if target.dim() != 2 {
        return Err(Error::Contract("target must be a surface".into()));
    }
    let rename = |e: &DoubleCover, to: &str| -> Result<QuadExt> {
        e.w_squared().subst(&[(e.chart()[0].clone(), RatFunc::var(to))])
    };
    let (t1, t2) = (&target.chart()[0], &target.chart()[1]);
    let product = rename(alpha1.target(), t1)?.mul(&rename(alpha2.target(), t2)?)?;
    if &product != target.w_squared() {
        return Err(Error::ChartMismatch(format!("{} is not w^2 = g1(x1) g2(x2)", target.name())));
    }
    let field = target.field().or(alpha1.target().field()).cloned();
    let x = c.chart()[0].clone();
    let f = c.branch().as_base().and_then(|r| r.is_polynomial().then(|| r.num().clone()));
    let f = f.ok_or_else(|| Error::Contract("f must be a polynomial over the base field".into()))?;
    let calc = ProductCalculus {
        field: field.clone(),
        f1: f.subst(&[(x.clone(), Poly::var(X1))]),
        f2: f.subst(&[(x.clone(), Poly::var(X2))]),
    };
    let mut out = Vec::new();
    for alpha in [alpha1, alpha2] {
        let (a, b) = cubic_leading(alpha.target())?;
        let imgs = alpha.images();
        let p = (calc.on_factor(&imgs[0], &x, X1, Y1)?, calc.on_factor(&imgs[1], &x, X1, Y1)?);
        let q = (calc.on_factor(&imgs[0], &x, X2, Y2)?, calc.on_factor(&imgs[1], &x, X2, Y2)?);
        out.push(chord_sum(&a, &b, (&p.0, &p.1), (&q.0, &q.1))?);
    }
    let big_x1 = calc.to_kummer(&out[0].0)?;
    let big_x2 = calc.to_kummer(&out[1].0)?;
    let big_y = calc.to_kummer(&out[0].1.mul(&out[1].1)?)?;
    let as_fn = |e: &QuadExt| -> Result<SurfaceFunction> {
        let r = e.to_ratfunc().subst(&[
            ("xi".to_string(), RatFunc::var(&km_jc.chart()[0])),
            ("zeta".to_string(), RatFunc::var(&km_jc.chart()[1])),
            ("eta".to_string(), RatFunc::var(km_jc.cover())),
        ])?;
        km_jc.reduce(&r, field.as_ref())
    };
    RationalMap::new(name, km_jc, target, vec![as_fn(&big_x1)?, as_fn(&big_x2)?, as_fn(&big_y)?])
}

/// The constant `k` with `(alpha1(P) + alpha1(Q), alpha2(P) + alpha2(Q))^*
/// (dx1∧dx2 / (w1 w2)) = k dxi∧dzeta/eta` pulled back to `C x C`.
///
/// Each sum map is checked symbolically to pull `du/w` back to
/// `alpha^*(du/w)` on both factors (chord formulas differentiated on
/// `C x C`), so `k = kappa * d` with the split-Jacobian constant `d` and the
/// Kummer factor `kappa`.
pub fn sum_map_form_factor(alpha1: &RationalMap, alpha2: &RationalMap) -> Result<(QuadExt, Vec<Report>)> {
    let sj = split_jacobian_constant(alpha1, alpha2)?;
    let c = alpha1.source();
    if c.dim() != 1 || !c.twist().is_one() {
        return Err(Error::Contract("source must be a curve y^2 = f(x)".into()));
    }
    let x = c.chart()[0].clone();
    let f = c.branch().as_base().and_then(|r| r.is_polynomial().then(|| r.num().clone()));
    let f = f.ok_or_else(|| Error::Contract("f must be a polynomial over the base field".into()))?;
    let field = alpha1.target().field().or(alpha2.target().field()).cloned();
    let calc = ProductCalculus {
        field,
        f1: f.subst(&[(x.clone(), Poly::var(X1))]),
        f2: f.subst(&[(x.clone(), Poly::var(X2))]),
    };
    let mut reports = Vec::new();
    for (alpha, pb) in [(alpha1, &sj.first), (alpha2, &sj.second)] {
        let (a, b) = cubic_leading(alpha.target())?;
        let imgs = alpha.images();
        let p = (calc.on_factor(&imgs[0], &x, X1, Y1)?, calc.on_factor(&imgs[1], &x, X1, Y1)?);
        let q = (calc.on_factor(&imgs[0], &x, X2, Y2)?, calc.on_factor(&imgs[1], &x, X2, Y2)?);
        let (u, w) = chord_sum(&a, &b, (&p.0, &p.1), (&q.0, &q.1))?;
        let (u, w) = (calc.clear_y(&u)?, calc.clear_y(&w)?);
        let mut ok = true;
        for (i, (xv, yv)) in [(X1, Y1), (X2, Y2)].into_iter().enumerate() {
            // du/dx_i * y_i - (a x_i + b) * w = 0
            let lhs = calc.derivative(&u, i + 1)?.mul(&QuadExt::base(RatFunc::var(yv)))?;
            let lin = pb.a.mul(&QuadExt::base(RatFunc::var(xv)))?.add(&pb.b)?;
            ok &= calc.clear_y(&lhs.sub(&lin.mul(&w)?)?)?.is_zero();
        }
        reports.push(Report::check(
            format!("sum map of {} pulls du/w back to the sum of the factor pullbacks", alpha.name()),
            ok,
            true,
            ok,
        ));
    }
    reports.push(sj.wedge.clone());
    let kappa = QuadExt::base(RatFunc::constant(kummer_form_factor()));
    // (x1 - x2) = kappa^{-1} * (x2 - x1) with kappa = -1
    let k = sj.d.mul(&kappa)?;
    Ok((k, reports))
}

/// Checks `symmetrize_product(f) = prod (xi - b_j zeta + b_j^2)` up to the
/// stated constant; returns the computed ratio.
pub fn product_of_tangent_lines(roots: &[QuadExt]) -> Result<QuadExt> {
    let xi = QuadExt::base(RatFunc::var("xi"));
    let zeta = QuadExt::base(RatFunc::var("zeta"));
    let mut acc = QuadExt::one();
    for b in roots {
        let line = xi.sub(&b.mul(&zeta)?)?.add(&b.mul(b)?)?;
        acc = acc.mul(&line)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(symmetrize_product(&p("x^2-1"), "x", "xi", "zeta").unwrap(), p("xi^2 + 2*xi - zeta^2 + 1"));
        assert_eq!(symmetrize_product(&p("x"), "x", "xi", "zeta").unwrap(), p("xi"));
    }

    #[test]
    fn symmetrize_matches_tangent_lines() {
        // f = (x - 1)(x - 2)(x + 3) -> prod (xi - b zeta + b^2)
        let f = p("(x-1)*(x-2)*(x+3)");
        let expect = p("(xi - zeta + 1)*(xi - 2*zeta + 4)*(xi + 3*zeta + 9)");
        assert_eq!(symmetrize_product(&f, "x", "xi", "zeta").unwrap(), expect);
    }

    #[test]
    fn asymmetric_input_detected() {
        assert!(symmetric_reduce(&p("_x1^2*_x2"), X1, X2, "xi", "zeta").is_none());
    }

    #[test]
    fn kummer_needs_degree_five_or_six() {
        let r = kummer_from_genus2("K", &p("x^4 + 1"), "x", QuadExt::one(), None);
        assert!(matches!(r, Err(Error::Contract(_))));
        let r = kummer_from_genus2("K", &p("x^3*(x^2+1)"), "x", QuadExt::one(), None);
        assert_eq!(r.unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn kummer_jacobian_factor() {
        // d(x1 x2)∧d(x1 + x2) = (x2 - x1) dx1∧dx2
        assert_eq!(kummer_form_factor(), Rational::from_integer((-1).into()));
    }

    #[test]
    fn square_reduction() {
        let f = p("_x1^3 + 1");
        assert_eq!(reduce_squares(&p("_y1^3 + _y1^2"), &[(Y1, &f)]), p("(_x1^3+1)*_y1 + _x1^3 + 1"));
    }
}
