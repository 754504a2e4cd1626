//! Numerical cross-check of a rational map: push random points of the
//! source over `F_p` through the map and test the target relation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cover::DoubleCover;
use super::map::RationalMap;
use crate::arith::fp::sqrt_mod;
use crate::arith::poly::rat_mod;
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOutcome {
    pub samples: usize,
    pub failures: usize,
}

/// Evaluation context: parameter values and the field generator mod `p`.
struct Context {
    p: u64,
    fixed: Vec<(String, u64)>,
}

impl Context {
    fn new(m: &RationalMap, params: &[(&str, Rational)], p: u64) -> Result<Self> {
        let mut fixed = Vec::new();
        for (name, value) in params {
            fixed.push((name.to_string(), rat_mod(value, p)?));
        }
        let fields = [m.source().field(), m.target().field()]
            .into_iter()
            .chain(m.images().iter().map(|g| g.field()))
            .flatten();
        for f in fields {
            if fixed.iter().any(|(n, _)| n == f.name()) {
                continue;
            }
            let lookup = |v: &str| fixed.iter().find(|(n, _)| n == v).map(|(_, x)| *x);
            let d = f.d().eval_mod(&lookup, p)?;
            let root = sqrt_mod(d, p)
                .ok_or_else(|| Error::Contract(format!("{} is not a square mod {p}", f.name())))?;
            fixed.push((f.name().to_string(), root));
        }
        Ok(Context { p, fixed })
    }

    fn with<'a>(&'a self, chart: &'a [(String, u64)]) -> impl Fn(&str) -> Option<u64> + 'a {
        move |v: &str| {
            chart
                .iter()
                .chain(&self.fixed)
                .find(|(n, _)| n == v)
                .map(|(_, x)| *x)
        }
    }
}

/// `c w^2 - F` at a point of the chart (given as `(u, v)` values and `w`).
fn relation_at(host: &DoubleCover, chart: &[(String, u64)], w: u64, ctx: &Context) -> Result<u64> {
    let p = ctx.p;
    let assign = ctx.with(chart);
    let c = host.twist().eval_mod(&assign, p)?;
    let f = host.branch().eval_mod(&assign, p)?;
    let lhs = (c as u128 * w as u128 % p as u128 * w as u128 % p as u128) as u64;
    Ok((lhs + p - f) % p)
}

/// Samples source points over `F_p` (uniform chart values with `F/c` a
/// square, both roots), maps them and counts target-relation failures.
/// Points where the map is undefined are skipped.
pub fn sample_check_mod_p(
    m: &RationalMap,
    params: &[(&str, Rational)],
    p: u64,
    trials: usize,
    seed: u64,
) -> Result<SampleOutcome> {
    if p < 3 || !crate::arith::fp::is_prime(p) {
        return Err(Error::BadPrime { p });
    }
    let ctx = Context::new(m, params, p)?;
    let src = m.source();
    let tgt = m.target();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SampleOutcome { samples: 0, failures: 0 };
    let mut attempts = 0;
    while out.samples < trials {
        attempts += 1;
        if attempts > 50 * trials.max(1) {
            return Err(Error::TooFewSamples { found: out.samples, wanted: trials });
        }
        let chart: Vec<(String, u64)> = src.chart().iter().map(|v| (v.clone(), rng.gen_range(0..p))).collect();
        let assign = ctx.with(&chart);
        let Ok(wsq) = src.w_squared().eval_mod(&assign, p) else { continue };
        let Some(w) = sqrt_mod(wsq, p) else { continue };
        for w in if w == 0 { vec![0] } else { vec![w, p - w] } {
            let imgs: Result<Vec<u64>> = m.images().iter().map(|g| g.eval_mod(&assign, w, p)).collect();
            let Ok(imgs) = imgs else { continue };
            let n = tgt.dim();
            let tchart: Vec<(String, u64)> = tgt.chart().iter().cloned().zip(imgs[..n].iter().copied()).collect();
            match relation_at(tgt, &tchart, imgs[n], &ctx) {
                Ok(0) => {}
                Ok(_) => out.failures += 1,
                Err(_) => continue,
            }
            out.samples += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use std::sync::Arc;

    fn x_t() -> Arc<DoubleCover> {
        DoubleCover::parse("X", &["x", "z"], "y", "1", "x*z*(x+1)*(z+1)*(x+z*t)", None).unwrap()
    }

    #[test]
    fn iota_has_no_failures() {
        let x = x_t();
        let iota = RationalMap::parse("iota", &x, &x, &["1/z", "1/x", "-y/(x^2*z^2)"], None).unwrap();
        let r = sample_check_mod_p(&iota, &[("t", rat(2))], 101, 500, 1).unwrap();
        assert_eq!(r.failures, 0);
        assert!(r.samples >= 500);
    }

    #[test]
    fn broken_map_fails_and_identity_passes() {
        let x = x_t();
        let bad = RationalMap::parse("bad", &x, &x, &["1/z", "1/x", "-y/(x^2*z^3)"], None).unwrap();
        assert!(sample_check_mod_p(&bad, &[("t", rat(2))], 101, 200, 1).unwrap().failures > 0);
        let id = RationalMap::identity(&x);
        assert_eq!(sample_check_mod_p(&id, &[("t", rat(2))], 101, 200, 1).unwrap().failures, 0);
    }

    #[test]
    fn unassigned_parameter_is_reported() {
        let x = x_t();
        let id = RationalMap::identity(&x);
        assert!(sample_check_mod_p(&id, &[], 101, 10, 1).is_err());
    }
}
