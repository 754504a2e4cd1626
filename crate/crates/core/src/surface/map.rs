//! Rational maps between double covers, composition and verification.

use std::fmt;
use std::sync::Arc;

use super::cover::{conj_name, DoubleCover, SurfaceFunction};
use crate::arith::{Poly, QuadExt, QuadField, RatFunc};
use crate::error::{Error, Result};
use crate::report::{Report, Verdict};

/// Images of the target chart variables followed by the image of the
/// target cover variable, all as functions on the source.
#[derive(Clone, Debug)]
pub struct RationalMap {
    name: String,
    source: Arc<DoubleCover>,
    target: Arc<DoubleCover>,
    images: Vec<SurfaceFunction>,
}

impl RationalMap {
    pub fn new(name: &str, source: &Arc<DoubleCover>, target: &Arc<DoubleCover>, images: Vec<SurfaceFunction>) -> Result<Self> {
        if images.len() != target.dim() + 1 {
            return Err(Error::Contract(format!(
                "{name}: expected {} images, got {}",
                target.dim() + 1,
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|f| !f.host().same_model(source)) {
            return Err(Error::ChartMismatch(format!("{name}: image lives on {}", bad.host().name())));
        }
        Ok(RationalMap {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            images: images.into_iter().map(|f| f.rehost(source)).collect(),
        })
    }

    /// Reads image expressions (target chart images, then the cover image).
    pub fn parse(
        name: &str,
        source: &Arc<DoubleCover>,
        target: &Arc<DoubleCover>,
        images: &[&str],
        field: Option<&Arc<QuadField>>,
    ) -> Result<Self> {
        let images = images.iter().map(|e| source.function(e, field)).collect::<Result<Vec<_>>>()?;
        Self::new(name, source, target, images)
    }

    pub fn identity(surface: &Arc<DoubleCover>) -> Self {
        let mut images: Vec<SurfaceFunction> = (0..surface.dim()).map(|i| surface.chart_fn(i)).collect();
        images.push(surface.cover_fn());
        RationalMap { name: format!("id_{}", surface.name()), source: surface.clone(), target: surface.clone(), images }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<DoubleCover> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DoubleCover> {
        &self.target
    }

    pub fn images(&self) -> &[SurfaceFunction] {
        &self.images
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_images(&self, images: Vec<SurfaceFunction>) -> Result<Self> {
        Self::new(&self.name, &self.source, &self.target, images)
    }

    /// `e ∘ m` for a function `e` of the target chart variables (no cover
    /// variable) given as a base-or-extension element.
    pub fn pullback_chart_expr(&self, e: &QuadExt) -> Result<SurfaceFunction> {
        let chart_images = &self.images[..self.target.dim()];
        if chart_images.iter().all(|f| !f.has_cover_part()) {
            return self.pullback_fast(e, chart_images);
        }
        let mut parts = Vec::with_capacity(2);
        for comp in [e.a0(), e.a1()] {
            let num = eval_poly_at(comp.num(), self.target.chart(), chart_images, &self.source)?;
            let den = eval_poly_at(comp.den(), self.target.chart(), chart_images, &self.source)?;
            if den.is_zero() {
                return Err(Error::Undefined(format!("{}: denominator vanishes", self.name)));
            }
            parts.push(num.div(&den)?);
        }
        let gen = match e.field() {
            Some(f) => SurfaceFunction::from_quad(&self.source, f.generator()),
            None => SurfaceFunction::from_quad(&self.source, QuadExt::zero()),
        };
        parts[0].add(&parts[1].mul(&gen)?)
    }

    fn pullback_fast(&self, e: &QuadExt, chart_images: &[SurfaceFunction]) -> Result<SurfaceFunction> {
        let mut field: Option<Arc<QuadField>> = e.field().cloned();
        for img in chart_images {
            if let Some(f) = img.field() {
                match &field {
                    None => field = Some(f.clone()),
                    Some(g) if g == f => {}
                    Some(g) => {
                        return Err(Error::ExtensionMismatch(g.name().to_string(), f.name().to_string()));
                    }
                }
            }
        }
        let assign: Vec<(String, RatFunc)> = self
            .target
            .chart()
            .iter()
            .cloned()
            .zip(chart_images.iter().map(|f| f.a0().to_ratfunc()))
            .collect();
        let lift = |r: &RatFunc| -> Result<QuadExt> {
            let s = r.subst(&assign).map_err(|_| Error::Undefined(format!("{}: denominator vanishes", self.name)))?;
            match &field {
                Some(f) => f.lift(&s),
                None => Ok(QuadExt::base(s)),
            }
        };
        let mut out = lift(e.a0())?;
        if !e.a1().is_zero() {
            let f = e.field().expect("a1 != 0");
            out = out.add(&lift(e.a1())?.mul(&f.generator())?)?;
        }
        Ok(SurfaceFunction::from_quad(&self.source, out))
    }

    /// `g ∘ m` for a function on the target.
    pub fn pullback(&self, g: &SurfaceFunction) -> Result<SurfaceFunction> {
        if !g.host().same_model(&self.target) {
            return Err(Error::ChartMismatch(format!("{} is not on {}", g, self.target.name())));
        }
        let a0 = self.pullback_chart_expr(g.a0())?;
        if g.a1().is_zero() {
            return Ok(a0);
        }
        let a1 = self.pullback_chart_expr(g.a1())?;
        a0.add(&a1.mul(&self.images[self.target.dim()])?)
    }

    /// `twist' * w'^2 - F'` pulled back to the source.
    pub fn relation_residue(&self) -> Result<SurfaceFunction> {
        let w = &self.images[self.target.dim()];
        let lhs = w.mul(w)?.scale(self.target.twist())?;
        let rhs = self.pullback_chart_expr(self.target.branch())?;
        lhs.sub(&rhs)
    }

    /// Checks that the pulled-back target relation vanishes identically.
    pub fn verify(&self) -> Report {
        let claim = format!("{} maps {} to {}", self.name, self.source.name(), self.target.name());
        match self.relation_residue() {
            Ok(r) if r.is_zero() => Report::new(claim, "0", "0", Verdict::Pass),
            Ok(r) => Report::new(claim, r.to_string(), "0", Verdict::Fail),
            Err(e) => Report::new(claim, e.to_string(), "0", Verdict::Fail),
        }
    }

    /// Whether the relation holds after multiplying the target's left side
    /// by some constant `k`; returns `k` when it does.
    pub fn verify_up_to_scalar(&self) -> Result<Option<QuadExt>> {
        let w = &self.images[self.target.dim()];
        let lhs = w.mul(w)?.scale(self.target.twist())?;
        let rhs = self.pullback_chart_expr(self.target.branch())?;
        if lhs.is_zero() {
            return Ok(rhs.is_zero().then(QuadExt::one));
        }
        let ratio = rhs.div(&lhs)?;
        Ok(ratio.constant_value().cloned())
    }

    /// `m2 ∘ m1`, where `self = m1`.
    pub fn then(&self, m2: &RationalMap) -> Result<RationalMap> {
        if !self.target.same_model(&m2.source) {
            return Err(Error::ChartMismatch(format!(
                "target {} of {} is not source {} of {}",
                self.target.name(),
                self.name,
                m2.source.name(),
                m2.name
            )));
        }
        let images = m2
            .images
            .iter()
            .map(|g| self.pullback(&g.rehost(&self.target)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalMap {
            name: format!("{}∘{}", m2.name, self.name),
            source: self.source.clone(),
            target: m2.target.clone(),
            images,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source.same_model(&self.target) && self.images == RationalMap::identity(&self.source).images
    }

    /// Checks `m ∘ m = id` (after checking `m` itself).
    pub fn verify_involution(&self) -> Report {
        let claim = format!("{} is an involution of {}", self.name, self.source.name());
        let base = self.verify();
        if !base.is_pass() {
            return Report::new(claim, base.computed, "identity", Verdict::Fail);
        }
        match compose(self, self) {
            Ok(m) if m.is_identity() => Report::new(claim, "identity", "identity", Verdict::Pass),
            Ok(m) => Report::new(claim, m.images_string(), "identity", Verdict::Fail),
            Err(e) => Report::new(claim, e.to_string(), "identity", Verdict::Fail),
        }
    }

    pub fn images_string(&self) -> String {
        let mut names: Vec<&str> = self.target.chart().iter().map(String::as_str).collect();
        names.push(self.target.cover());
        names.iter().zip(&self.images).map(|(n, f)| format!("{n} = {f}")).collect::<Vec<_>>().join(", ")
    }

    /// Conjugates every coefficient (`s -> -s`) of the map and both models.
    pub fn conjugate(&self) -> RationalMap {
        let source = self.source.conjugate();
        let target = self.target.conjugate();
        RationalMap {
            name: conj_name(&self.name),
            images: self.images.iter().map(|f| f.conj().rehost(&source)).collect(),
            source,
            target,
        }
    }

    /// Whether some image still involves chart variables; a map with all
    /// images constant is degenerate.
    pub fn is_nonconstant(&self) -> bool {
        self.images.iter().any(|f| f.constant_value().is_none())
    }

    pub fn specialize(&self, var: &str, value: &crate::arith::Rational) -> Result<RationalMap> {
        let source = self.source.specialize(var, value)?;
        let target = self.target.specialize(var, value)?;
        let images = self.images.iter().map(|f| f.specialize(var, value, &source)).collect::<Result<Vec<_>>>()?;
        Ok(RationalMap { name: self.name.clone(), source, target, images })
    }
}

/// `m2 ∘ m1`: first `m1`, then `m2`.
pub fn compose(m1: &RationalMap, m2: &RationalMap) -> Result<RationalMap> {
    m1.then(m2)
}

/// Horner evaluation of a polynomial in `vars` at surface functions.
fn eval_poly_at(p: &Poly, vars: &[String], images: &[SurfaceFunction], host: &Arc<DoubleCover>) -> Result<SurfaceFunction> {
    match vars.iter().position(|v| p.uses_var(v)) {
        None => Ok(SurfaceFunction::from_quad(host, QuadExt::base(RatFunc::from_poly(p.clone())))),
        Some(k) => {
            let coeffs = p.as_univariate(&vars[k]);
            let mut acc = SurfaceFunction::from_quad(host, QuadExt::zero());
            for c in coeffs.iter().rev() {
                acc = acc.mul(&images[k])?.add(&eval_poly_at(c, vars, images, host)?)?;
            }
            Ok(acc)
        }
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {} ({})", self.name, self.source.name(), self.target.name(), self.images_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_t() -> Arc<DoubleCover> {
        DoubleCover::parse("X_t", &["x", "z"], "y", "1", "x*z*(x+1)*(z+1)*(x+z*t)", None).unwrap()
    }

    fn iota(third: &str) -> RationalMap {
        let x = x_t();
        RationalMap::parse("iota", &x, &x, &["1/z", "1/x", third], None).unwrap()
    }

    #[test]
    fn involution_passes() {
        assert!(iota("-y/(x^2*z^2)").verify().is_pass());
        assert!(iota("-y/(x^2*z^2)").verify_involution().is_pass());
    }

    #[test]
    fn broken_map_leaves_residue() {
        let r = iota("-y/(x^2*z^3)").verify();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_ne!(r.computed, "0");
    }

    #[test]
    fn identity_and_hyperelliptic() {
        let x = x_t();
        assert!(RationalMap::identity(&x).verify().is_pass());
        let h = RationalMap::parse("tau", &x, &x, &["x", "z", "-y"], None).unwrap();
        assert!(h.verify_involution().is_pass());
    }

    #[test]
    fn composition_with_identity_is_unit() {
        let m = iota("-y/(x^2*z^2)");
        let id = RationalMap::identity(m.source());
        let c = compose(&id, &m).unwrap();
        assert_eq!(c.images(), m.images());
    }

    #[test]
    fn chart_mismatch_on_compose() {
        let x = x_t();
        let other = DoubleCover::parse("C", &["x"], "y", "1", "x^5 + 1", None).unwrap();
        let m = RationalMap::identity(&other);
        assert!(matches!(compose(&RationalMap::identity(&x), &m), Err(Error::ChartMismatch(_))));
    }

    #[test]
    fn cover_dependent_chart_images() {
        // (x, z, y) -> (x, y, ...) exercises the slow path.
        let c = DoubleCover::parse("C", &["u", "v"], "w", "1", "u*v + 1", None).unwrap();
        let m = RationalMap::parse("m", &c, &c, &["u", "w", "w"], None).unwrap();
        let e = QuadExt::base("u*v".parse().unwrap());
        let g = m.pullback_chart_expr(&e).unwrap();
        assert_eq!(g, c.function("u*w", None).unwrap());
    }
}
