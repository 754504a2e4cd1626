//! Elliptic-fibration description of an involution: on a surface fibred by
//! long Weierstrass cubics over the `alpha`-line, check the cubic relation
//! and that the involution acts as `(P1 - P, -alpha)`.

use super::cover::SurfaceFunction;
use super::elliptic::{EllipticCurveLong, Point};
use super::map::RationalMap;
use crate::report::{Report, Verdict};

/// Fibration data on a double cover `X`, everything written as functions on
/// `X`.
#[derive(Clone, Debug)]
pub struct FibrationData {
    pub involution: RationalMap,
    /// Base coordinate of the fibration.
    pub alpha: SurfaceFunction,
    /// Weierstrass coordinates on the fibres.
    pub xi: SurfaceFunction,
    pub eta: SurfaceFunction,
    /// Weierstrass coefficients, functions of `alpha`.
    pub curve: EllipticCurveLong<SurfaceFunction>,
    /// The section used in the group-law description.
    pub section: (SurfaceFunction, SurfaceFunction),
}

/// Runs the two checks and returns one report each.
pub fn verify_fibration_form(data: &FibrationData) -> Vec<Report> {
    let mut out = Vec::new();
    let claim = "fibre equation holds for (xi, eta)";
    out.push(match data.curve.equation_at(&data.xi, &data.eta) {
        Ok(r) if r.is_zero() => Report::new(claim, "0", "0", Verdict::Pass),
        Ok(r) => Report::new(claim, r.to_string(), "0", Verdict::Fail),
        Err(e) => Report::new(claim, e.to_string(), "0", Verdict::Fail),
    });
    out.push(group_law_check(data));
    out
}

fn group_law_check(data: &FibrationData) -> Report {
    let claim = format!("{} = (P1(alpha) - (xi, eta), -alpha)", data.involution.name());
    let expected = "equal coordinates";
    let run = || -> crate::Result<Option<String>> {
        let p = Point::Affine(data.xi.clone(), data.eta.clone());
        let p1 = Point::Affine(data.section.0.clone(), data.section.1.clone());
        let q = data.curve.sub(&p1, &p)?;
        let Point::Affine(qx, qy) = q else {
            return Ok(Some("P1 - P is the point at infinity".into()));
        };
        let m = &data.involution;
        let ix = m.pullback(&data.xi)?;
        let iy = m.pullback(&data.eta)?;
        let ia = m.pullback(&data.alpha)?;
        let mut bad = Vec::new();
        if ix != qx {
            bad.push(format!("xi: {ix} vs {qx}"));
        }
        if iy != qy {
            bad.push(format!("eta: {iy} vs {qy}"));
        }
        if ia != data.alpha.neg() {
            bad.push(format!("alpha: {ia}"));
        }
        Ok((!bad.is_empty()).then(|| bad.join("; ")))
    };
    match run() {
        Ok(None) => Report::new(claim, expected, expected, Verdict::Pass),
        Ok(Some(diff)) => Report::new(claim, diff, expected, Verdict::Fail),
        Err(e) => Report::new(claim, e.to_string(), expected, Verdict::Fail),
    }
}
