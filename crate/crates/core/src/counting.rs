//! Point counts over `F_p`: the affine double cover `y^2 = F(x, z)` of
//! `X_t` against the Frobenius trace of `E_t` twisted by the quadratic
//! character of `t + 1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::fp::{is_prime, legendre};
use crate::arith::poly::rat_mod;
use crate::arith::{rat, Poly, RatFunc, Rational};
use crate::error::{Error, Result};

/// Branch polynomial of `X_t`.
pub const X_T_BRANCH: &str = "x*z*(x+1)*(z+1)*(x+z*t)";
/// Right-hand side of `E_t`.
pub const E_T_CUBIC: &str = "(x-1)*(x^2-1/(t+1))";

/// A polynomial with coefficients reduced mod `p`, ready for repeated
/// evaluation.
struct ModPoly {
    p: u64,
    terms: Vec<(u64, Vec<u32>)>,
}

impl ModPoly {
    fn new(f: &Poly, vars: &[&str], p: u64) -> Result<ModPoly> {
        if let Some(v) = f.vars().iter().find(|v| f.uses_var(v) && !vars.contains(&v.as_str())) {
            return Err(Error::Unassigned(v.clone()));
        }
        let idx: Vec<Option<usize>> = f.vars().iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            let c = rat_mod(c, p)?;
            if c == 0 {
                continue;
            }
            let mut exps = vec![0u32; vars.len()];
            for (k, &e) in m.exps().iter().enumerate() {
                if let Some(i) = idx[k] {
                    exps[i] = e as u32;
                }
            }
            terms.push((c, exps));
        }
        Ok(ModPoly { p, terms })
    }

    fn eval(&self, point: &[u64]) -> u64 {
        let p = self.p as u128;
        let mut acc = 0u128;
        for (c, exps) in &self.terms {
            let mut t = *c as u128;
            for (&e, &x) in exps.iter().zip(point) {
                for _ in 0..e {
                    t = t * x as u128 % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc as u64
    }
}

/// Quadratic character of every residue mod `p`.
fn character_table(p: u64) -> Vec<i8> {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for x in 1..p {
        chi[(x * x % p) as usize] = 1;
    }
    chi
}

fn check_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::BadPrime { p });
    }
    Ok(())
}

/// The Legendre symbol of `m` at `p`; a prime dividing the numerator or
/// denominator of `m` is bad.
pub fn chi_quadratic(m: &Rational, p: u64) -> Result<i8> {
    check_prime(p)?;
    let v = rat_mod(m, p)?;
    if v == 0 {
        return Err(Error::BadPrime { p });
    }
    Ok(legendre(v, p))
}

/// `a_p = p + 1 - #E(F_p)` for `y^2 = f(x)` with `f` a cubic over `Q`.
pub fn ap_of_elliptic(f: &Poly, x: &str, p: u64) -> Result<i64> {
    check_prime(p)?;
    if f.degree_in(x) != 3 || f.vars().iter().any(|v| v != x && f.uses_var(v)) {
        return Err(Error::Contract(format!("{f} is not a cubic in {x}")));
    }
    let cs: Vec<u64> = f
        .as_univariate(x)
        .iter()
        .map(|c| c.constant_value().map_or(Ok(0), |c| rat_mod(&c, p)))
        .collect::<Result<_>>()?;
    if cubic_discriminant(&cs, p) == 0 {
        return Err(Error::Degenerate(format!("bad reduction at {p}")));
    }
    let chi = character_table(p);
    let g = ModPoly::new(f, &[x], p)?;
    let sum: i64 = (0..p).map(|v| chi[g.eval(&[v]) as usize] as i64).sum();
    Ok(-sum)
}

/// Discriminant of `d + c x + b x^2 + a x^3` mod `p` (coefficients lowest
/// first).
fn cubic_discriminant(cs: &[u64], p: u64) -> u64 {
    let p = p as i128;
    let (d, c, b, a) = (cs[0] as i128, cs[1] as i128, cs[2] as i128, cs[3] as i128);
    let m = |x: i128| x.rem_euclid(p);
    let terms = [
        m(m(b * b) * m(c * c)),
        -m(4 * m(a * m(m(c * c) * c))),
        -m(4 * m(m(m(b * b) * b) * d)),
        -m(27 * m(m(a * a) * m(d * d))),
        m(18 * m(m(a * b) * m(c * d))),
    ];
    m(terms.iter().sum::<i128>()) as u64
}

/// `N0 = sum over (u, v) in F_p^2 of (1 + chi(F(u, v)))`.
pub fn count_affine_double_cover(f: &Poly, vars: [&str; 2], p: u64) -> Result<u64> {
    check_prime(p)?;
    let g = ModPoly::new(f, &vars, p)?;
    let chi = character_table(p);
    let mut total: i64 = 0;
    for u in 0..p {
        for v in 0..p {
            total += 1 + chi[g.eval(&[u, v]) as usize] as i64;
        }
    }
    Ok(total as u64)
}

/// One prime of the scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub t: String,
    pub p: u64,
    #[serde(rename = "N0")]
    pub n0: u64,
    pub ap: i64,
    pub chi: i8,
    pub delta: i64,
    pub predicted: i64,
    pub residual: i64,
}

fn specialized(expr: &str, t: &Rational) -> Result<Poly> {
    let r: RatFunc = expr.parse()?;
    let r = r.specialize("t", t)?;
    let den = r.den().constant_value().ok_or_else(|| Error::Contract(format!("{expr} is not polynomial")))?;
    Ok(r.num().scale(&(rat(1) / den)))
}

/// Why `p` is skipped for `t`, if it is.
pub fn bad_prime_reason(t: &Rational, p: u64) -> Option<String> {
    if p < 3 || !is_prime(p) {
        return Some("not an odd prime".into());
    }
    let divides = |n: &num_bigint::BigInt| (n % p as i64) == num_bigint::BigInt::from(0);
    let t1 = t + rat(1);
    for (name, v) in [("t", t), ("t+1", &t1)] {
        if divides(v.numer()) || divides(v.denom()) {
            return Some(format!("{p} divides {name}"));
        }
    }
    let e = specialized(E_T_CUBIC, t).ok()?;
    let cs: Vec<u64> = e
        .as_univariate("x")
        .iter()
        .map(|c| c.constant_value().map_or(Ok(0), |c| rat_mod(&c, p)))
        .collect::<Result<_>>()
        .ok()?;
    if cubic_discriminant(&cs, p) == 0 {
        return Some(format!("E_t has bad reduction at {p}"));
    }
    None
}

/// Counts and trace data at one good prime.
pub fn count_report(t: &Rational, p: u64) -> Result<CountReport> {
    forbid(t)?;
    if let Some(why) = bad_prime_reason(t, p) {
        return Err(Error::Contract(format!("bad prime: {why}")));
    }
    let n0 = count_affine_double_cover(&specialized(X_T_BRANCH, t)?, ["x", "z"], p)?;
    let ap = ap_of_elliptic(&specialized(E_T_CUBIC, t)?, "x", p)?;
    let chi = chi_quadratic(&(t + rat(1)), p)?;
    let p2 = (p * p) as i64;
    let delta = n0 as i64 - p2;
    let predicted = chi as i64 * (ap * ap - p as i64);
    Ok(CountReport { t: t.to_string(), p, n0, ap, chi, delta, predicted, residual: delta - predicted })
}

fn forbid(t: &Rational) -> Result<()> {
    if *t == rat(0) || *t == rat(-1) {
        return Err(Error::ForbiddenParameter(format!("t = {t}: the family or E_t degenerates")));
    }
    Ok(())
}

/// One row of the scan table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    #[serde(flatten)]
    pub count: CountReport,
    pub fitted: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub t: String,
    pub a: i64,
    pub b: i64,
    pub consistent: bool,
    pub violations: Vec<u64>,
    pub skipped: Vec<(u64, String)>,
    pub rows: Vec<ScanRow>,
}

/// Fits `residual = a p + b` through the two smallest primes and lists the
/// primes that violate it. `None` when the slope is not an integer.
pub fn fit_affine(points: &[(u64, i64)]) -> Result<(i64, i64, Vec<u64>)> {
    let mut pts = points.to_vec();
    pts.sort();
    if pts.len() < 3 {
        return Err(Error::Contract(format!("need at least 3 good primes, have {}", pts.len())));
    }
    let (p1, r1) = (pts[0].0 as i64, pts[0].1);
    let (p2, r2) = (pts[1].0 as i64, pts[1].1);
    if (r2 - r1) % (p2 - p1) != 0 {
        let all = pts.iter().map(|(p, _)| *p).collect();
        return Ok((0, 0, all));
    }
    let a = (r2 - r1) / (p2 - p1);
    let b = r1 - a * p1;
    let bad = pts.iter().filter(|(p, r)| a * *p as i64 + b != *r).map(|(p, _)| *p).collect();
    Ok((a, b, bad))
}

/// The scan over all primes in `[pmin, pmax]`; bad primes are skipped and
/// listed.
pub fn trace_identity_scan(t: &Rational, pmin: u64, pmax: u64) -> Result<ScanReport> {
    forbid(t)?;
    if pmin > pmax {
        return Err(Error::Contract(format!("empty prime range [{pmin}, {pmax}]")));
    }
    let primes: Vec<u64> = (pmin.max(3)..=pmax).filter(|&n| is_prime(n)).collect();
    let mut skipped = Vec::new();
    let mut good = Vec::new();
    for p in primes {
        match bad_prime_reason(t, p) {
            Some(why) => skipped.push((p, why)),
            None => good.push(p),
        }
    }
    let mut counts: Vec<CountReport> = good.par_iter().map(|&p| count_report(t, p)).collect::<Result<_>>()?;
    counts.sort_by_key(|c| c.p);
    let points: Vec<(u64, i64)> = counts.iter().map(|c| (c.p, c.residual)).collect();
    let (a, b, violations) = fit_affine(&points)?;
    let rows = counts
        .into_iter()
        .map(|count| {
            let fitted = a * count.p as i64 + b;
            let pass = fitted == count.residual;
            ScanRow { count, fitted, pass }
        })
        .collect();
    Ok(ScanReport { t: t.to_string(), a, b, consistent: violations.is_empty(), violations, skipped, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn elliptic_traces() {
        // E_1: y^2 = (x - 1)(x^2 - 1/2) over F_7; 1/2 = 4
        assert_eq!(ap_of_elliptic(&specialized(E_T_CUBIC, &rat(1)).unwrap(), "x", 7).unwrap(), 0);
        // supersingular for p = 3 mod 4; over F_5 there are 8 points
        assert_eq!(ap_of_elliptic(&p("x^3-x"), "x", 7).unwrap(), 0);
        assert_eq!(ap_of_elliptic(&p("x^3-x"), "x", 5).unwrap(), -2);
        assert!(matches!(ap_of_elliptic(&p("x^3"), "x", 5), Err(Error::Degenerate(_))));
    }

    #[test]
    fn characters() {
        assert_eq!(chi_quadratic(&rat(2), 7).unwrap(), 1);
        assert_eq!(chi_quadratic(&rat(1), 11).unwrap(), 1);
        assert_eq!(chi_quadratic(&rat(2), 5).unwrap(), -1);
        assert!(chi_quadratic(&frac(1, 5), 5).is_err());
    }

    #[test]
    fn toy_counts() {
        assert_eq!(count_affine_double_cover(&p("x"), ["x", "z"], 5).unwrap(), 25);
        assert_eq!(count_affine_double_cover(&p("1"), ["x", "z"], 5).unwrap(), 50);
    }

    #[test]
    fn forbidden_and_bad() {
        assert!(trace_identity_scan(&rat(-1), 3, 50).is_err());
        assert!(trace_identity_scan(&rat(0), 3, 50).is_err());
        assert!(bad_prime_reason(&rat(3), 3).is_some());
        let scan = trace_identity_scan(&rat(3), 3, 30).unwrap();
        assert!(scan.skipped.iter().any(|(p, _)| *p == 3));
        assert!(scan.rows.iter().all(|r| r.count.p != 3));
    }

    #[test]
    fn affine_fit() {
        let (a, b, bad) = fit_affine(&[(5, 11), (7, 15), (11, 23), (13, 0)]).unwrap();
        assert_eq!((a, b), (2, 1));
        assert_eq!(bad, vec![13]);
        assert!(fit_affine(&[(5, 1), (7, 2)]).is_err());
    }
}
