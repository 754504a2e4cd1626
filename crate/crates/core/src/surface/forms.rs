//! Top-degree differential forms `g du` (curves) and `g du∧dv` (surfaces).

use std::fmt;
use std::sync::Arc;

use super::cover::{DoubleCover, SurfaceFunction};
use super::map::RationalMap;
use crate::arith::QuadExt;
use crate::error::{Error, Result};

/// `coeff` times the wedge of the chart differentials of its host.
#[derive(Clone, Debug, PartialEq)]
pub struct TopForm {
    coeff: SurfaceFunction,
}

pub type TwoForm = TopForm;
pub type OneForm = TopForm;

impl TopForm {
    pub fn new(coeff: SurfaceFunction) -> Self {
        TopForm { coeff }
    }

    /// `du∧dv / w` (or `du / w`), the standard regular form on a double cover.
    pub fn standard(host: &Arc<DoubleCover>) -> Result<Self> {
        Ok(TopForm { coeff: host.cover_fn().inv()? })
    }

    pub fn coeff(&self) -> &SurfaceFunction {
        &self.coeff
    }

    pub fn host(&self) -> &Arc<DoubleCover> {
        self.coeff.host()
    }

    pub fn add(&self, other: &TopForm) -> Result<TopForm> {
        Ok(TopForm { coeff: self.coeff.add(&other.coeff)? })
    }

    pub fn scale(&self, c: &QuadExt) -> Result<TopForm> {
        Ok(TopForm { coeff: self.coeff.scale(c)? })
    }

    /// `self / other` when both are forms on the same host; the ratio is a
    /// function.
    pub fn ratio(&self, other: &TopForm) -> Result<SurfaceFunction> {
        self.coeff.div(&other.coeff)
    }

    pub fn conj(&self) -> TopForm {
        TopForm { coeff: self.coeff.conj() }
    }
}

impl fmt::Display for TopForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chart = self.coeff.host().chart();
        let frame = chart.iter().map(|v| format!("d{v}")).collect::<Vec<_>>().join("∧");
        write!(f, "({}) {}", self.coeff, frame)
    }
}

/// Jacobian determinant of the chart images of `m`.
pub fn jacobian_determinant(m: &RationalMap) -> Result<SurfaceFunction> {
    let src = m.source().chart().to_vec();
    let n = m.target().dim();
    if src.len() != n {
        return Err(Error::ChartMismatch(format!(
            "{}: source and target charts have different dimensions",
            m.name()
        )));
    }
    let imgs = &m.images()[..n];
    match n {
        1 => imgs[0].derivative(&src[0]),
        2 => {
            let a = imgs[0].derivative(&src[0])?;
            let b = imgs[0].derivative(&src[1])?;
            let c = imgs[1].derivative(&src[0])?;
            let d = imgs[1].derivative(&src[1])?;
            a.mul(&d)?.sub(&b.mul(&c)?)
        }
        _ => unreachable!("charts have one or two variables"),
    }
}

/// `m^*(g du'∧dv') = (g∘m) det J du∧dv`.
pub fn pullback_form(m: &RationalMap, omega: &TopForm) -> Result<TopForm> {
    if !omega.host().same_model(m.target()) {
        return Err(Error::ChartMismatch(format!("form lives on {}, map targets {}", omega.host().name(), m.target().name())));
    }
    let g = m.pullback(omega.coeff())?;
    let j = jacobian_determinant(m)?;
    Ok(TopForm { coeff: g.mul(&j)? })
}

pub fn pullback_two_form(m: &RationalMap, omega: &TwoForm) -> Result<TwoForm> {
    pullback_form(m, omega)
}

pub fn pullback_one_form(m: &RationalMap, omega: &OneForm) -> Result<OneForm> {
    pullback_form(m, omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::map::compose;

    #[test]
    fn identity_pullback() {
        let x = DoubleCover::parse("X", &["x", "z"], "y", "1", "x*z*(x+1)*(z+1)*(x+z*t)", None).unwrap();
        let w = TopForm::standard(&x).unwrap();
        assert_eq!(pullback_two_form(&RationalMap::identity(&x), &w).unwrap(), w);
    }

    #[test]
    fn chain_rule_on_iota() {
        let x = DoubleCover::parse("X", &["x", "z"], "y", "1", "x*z*(x+1)*(z+1)*(x+z*t)", None).unwrap();
        let iota = RationalMap::parse("iota", &x, &x, &["1/z", "1/x", "-y/(x^2*z^2)"], None).unwrap();
        let w = TopForm::standard(&x).unwrap();
        let twice = pullback_two_form(&iota, &pullback_two_form(&iota, &w).unwrap()).unwrap();
        let direct = pullback_two_form(&compose(&iota, &iota).unwrap(), &w).unwrap();
        assert_eq!(twice, direct);
        assert_eq!(direct, w);
        // Nikulin: the 2-form is preserved.
        assert_eq!(pullback_two_form(&iota, &w).unwrap(), w);
    }
}
