//! Line arrangements in the plane and the nodal curves on the K3 double
//! cover branched along them.
//!
//! Blowing up a double point gives one exceptional curve off the branch
//! locus. A triple point is blown up once (the exceptional curve joins the
//! branch locus) and then once more at each of the three points where it
//! meets the lines.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::gram::GramLattice;
use num_traits::Zero;

use crate::arith::{RatFunc, Rational};
use crate::error::{Error, Result};

pub type ProjPoint = [RatFunc; 3];

#[derive(Clone, Debug)]
pub struct ConfigLine {
    pub label: String,
    /// `a u + b v + c w = 0`.
    pub coeffs: [RatFunc; 3],
}

#[derive(Clone, Debug)]
pub struct ConfigPoint {
    pub label: String,
    pub coords: ProjPoint,
    /// Indices into the line list.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Configuration {
    pub lines: Vec<ConfigLine>,
    pub points: Vec<ConfigPoint>,
}

/// Manifest form: lines as coefficient triples, named points as coordinate
/// triples, all as expression strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigurationSpec {
    pub lines: Vec<(String, [String; 3])>,
    pub points: Vec<(String, [String; 3])>,
}

fn cross(a: &[RatFunc; 3], b: &[RatFunc; 3]) -> [RatFunc; 3] {
    let c = |i: usize, j: usize| a[i].mul(&b[j]).sub(&a[j].mul(&b[i]));
    [c(1, 2), c(2, 0), c(0, 1)]
}

fn is_zero_vec(p: &[RatFunc; 3]) -> bool {
    p.iter().all(RatFunc::is_zero)
}

fn same_point(p: &ProjPoint, q: &ProjPoint) -> bool {
    is_zero_vec(&cross(p, q))
}

fn on_line(l: &ConfigLine, p: &ProjPoint) -> bool {
    l.coeffs.iter().zip(p).fold(RatFunc::zero(), |acc, (a, x)| acc.add(&a.mul(x))).is_zero()
}

fn parse3(v: &[String; 3]) -> Result<[RatFunc; 3]> {
    Ok([v[0].parse()?, v[1].parse()?, v[2].parse()?])
}

impl Configuration {
    /// Intersects every pair of lines and assigns each intersection to the
    /// named point it equals; an unnamed intersection is an error.
    pub fn from_spec(spec: &ConfigurationSpec) -> Result<Configuration> {
        let lines = spec
            .lines
            .iter()
            .map(|(label, c)| Ok(ConfigLine { label: label.clone(), coeffs: parse3(c)? }))
            .collect::<Result<Vec<_>>>()?;
        for l in &lines {
            if is_zero_vec(&l.coeffs) {
                return Err(Error::Configuration(format!("line {} has zero coefficients", l.label)));
            }
        }
        let mut named: Vec<(String, ProjPoint)> = Vec::new();
        for (label, c) in &spec.points {
            let p = parse3(c)?;
            if is_zero_vec(&p) {
                return Err(Error::Configuration(format!("point {label} is zero")));
            }
            if let Some((other, _)) = named.iter().find(|(_, q)| same_point(&p, q)) {
                return Err(Error::Configuration(format!("points {other} and {label} coincide")));
            }
            named.push((label.clone(), p));
        }
        let mut points: Vec<ConfigPoint> = Vec::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let p = cross(&lines[i].coeffs, &lines[j].coeffs);
                if is_zero_vec(&p) {
                    return Err(Error::Configuration(format!("lines {} and {} coincide", lines[i].label, lines[j].label)));
                }
                if points.iter().any(|q| same_point(&q.coords, &p)) {
                    continue;
                }
                let (label, coords) = named
                    .iter()
                    .find(|(_, q)| same_point(q, &p))
                    .cloned()
                    .ok_or_else(|| {
                        Error::Configuration(format!("{} meets {} at an unnamed point", lines[i].label, lines[j].label))
                    })?;
                let through = (0..lines.len()).filter(|&k| on_line(&lines[k], &coords)).collect();
                points.push(ConfigPoint { label, coords, lines: through });
            }
        }
        // keep the order of the named list
        points.sort_by_key(|p| named.iter().position(|(l, _)| *l == p.label));
        Ok(Configuration { lines, points })
    }

    pub fn specialize(&self, v: &str, value: &Rational) -> Result<ConfigurationSpec> {
        let sp = |x: &[RatFunc; 3]| -> Result<[String; 3]> {
            Ok([x[0].specialize(v, value)?.to_string(), x[1].specialize(v, value)?.to_string(), x[2].specialize(v, value)?.to_string()])
        };
        Ok(ConfigurationSpec {
            lines: self.lines.iter().map(|l| Ok((l.label.clone(), sp(&l.coeffs)?))).collect::<Result<_>>()?,
            points: self.points.iter().map(|p| Ok((p.label.clone(), sp(&p.coords)?))).collect::<Result<_>>()?,
        })
    }

    pub fn count_by_multiplicity(&self, m: usize) -> usize {
        self.points.iter().filter(|p| p.lines.len() == m).count()
    }

    /// Text summary: lines, points with multiplicity, and the blow-up plan.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "  line {}: ({}) . (u, v, w) = 0", l.label, join(&l.coeffs));
        }
        for p in &self.points {
            let through: Vec<&str> = p.lines.iter().map(|&i| self.lines[i].label.as_str()).collect();
            let plan = match p.lines.len() {
                2 => "double: one blow-up".to_string(),
                3 => "triple: one blow-up, then three".to_string(),
                k => format!("multiplicity {k}: unsupported"),
            };
            let _ = writeln!(out, "  point {} = ({}) on {}; {plan}", p.label, join(&p.coords), through.join(", "));
        }
        out
    }
}

fn join(x: &[RatFunc; 3]) -> String {
    format!("{} : {} : {}", x[0], x[1], x[2])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveKind {
    /// Strict transform of a line (branch component).
    Line,
    /// First exceptional curve over a triple point (branch component).
    TripleExceptional,
    /// Exceptional curve over a point of a triple-point exceptional curve.
    SecondExceptional,
    /// Exceptional curve over a double point.
    DoubleExceptional,
}

impl CurveKind {
    fn is_branch(self) -> bool {
        matches!(self, CurveKind::Line | CurveKind::TripleExceptional)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodalCurveSet {
    pub kinds: Vec<CurveKind>,
    pub lattice: GramLattice,
}

impl NodalCurveSet {
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.lattice.labels.clone()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.lattice.index_of(label).ok_or_else(|| Error::UnknownEntry(label.to_string()))
    }

    /// Coordinate vector of a sum of named curves.
    pub fn vector(&self, labels: &[&str]) -> Result<Vec<i64>> {
        let mut v = vec![0; self.len()];
        for l in labels {
            v[self.index_of(l)?] += 1;
        }
        Ok(v)
    }
}

/// Label of the second exceptional curve over `point` meeting `line`.
pub fn second_label(point: &str, line: &str) -> String {
    format!("{point}^{line}")
}

/// Intersection matrix of the nodal curves on the double cover branched
/// along the lines, after resolving every double and triple point.
pub fn config_to_gram(c: &Configuration) -> Result<NodalCurveSet> {
    // (label, kind, owning point, line)
    let mut curves: Vec<(String, CurveKind, Option<usize>, Option<usize>)> = Vec::new();
    for (i, l) in c.lines.iter().enumerate() {
        curves.push((l.label.clone(), CurveKind::Line, None, Some(i)));
    }
    for (pi, p) in c.points.iter().enumerate() {
        match p.lines.len() {
            2 => curves.push((p.label.clone(), CurveKind::DoubleExceptional, Some(pi), None)),
            3 => {
                curves.push((p.label.clone(), CurveKind::TripleExceptional, Some(pi), None));
                for &li in &p.lines {
                    curves.push((second_label(&p.label, &c.lines[li].label), CurveKind::SecondExceptional, Some(pi), Some(li)));
                }
            }
            k => return Err(Error::Configuration(format!("point {} has multiplicity {k}", p.label))),
        }
    }
    // self-intersections on the blown-up plane
    let plane_self = |k: usize| -> Result<i64> {
        let (_, kind, point, line) = &curves[k];
        Ok(match kind {
            CurveKind::Line => {
                let li = line.expect("line curve");
                let doubles = c.points.iter().filter(|p| p.lines.len() == 2 && p.lines.contains(&li)).count() as i64;
                let triples = c.points.iter().filter(|p| p.lines.len() == 3 && p.lines.contains(&li)).count() as i64;
                1 - doubles - 2 * triples
            }
            CurveKind::TripleExceptional => {
                let _ = point;
                -1 - 3
            }
            _ => -1,
        })
    };
    // intersections on the blown-up plane between a branch and a non-branch curve
    let plane_meet = |a: usize, b: usize| -> i64 {
        let (_, ka, pa, la) = &curves[a];
        let (_, kb, pb, lb) = &curves[b];
        match (ka, kb) {
            (CurveKind::Line, CurveKind::DoubleExceptional) => c.points[pb.expect("point")].lines.contains(&la.expect("line")) as i64,
            (CurveKind::Line, CurveKind::SecondExceptional) => (la == lb) as i64,
            (CurveKind::TripleExceptional, CurveKind::SecondExceptional) => (pa == pb) as i64,
            _ => 0,
        }
    };
    let n = curves.len();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        let s = plane_self(i)?;
        gram[i][i] = if curves[i].1.is_branch() {
            if s % 2 != 0 {
                return Err(Error::Configuration(format!("branch curve {} has odd self-intersection {s}", curves[i].0)));
            }
            s / 2
        } else {
            2 * s
        };
        for j in 0..i {
            let (bi, bj) = (curves[i].1.is_branch(), curves[j].1.is_branch());
            let v = match (bi, bj) {
                (true, true) => 0,
                (true, false) => plane_meet(i, j),
                (false, true) => plane_meet(j, i),
                // distinct exceptional curves are disjoint on the plane
                (false, false) => 0,
            };
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    let labels = curves.iter().map(|c| c.0.clone()).collect();
    let kinds = curves.iter().map(|c| c.1).collect();
    Ok(NodalCurveSet { kinds, lattice: GramLattice::new(labels, gram)? })
}

fn s3(a: &str, b: &str, c: &str) -> [String; 3] {
    [a.to_string(), b.to_string(), c.to_string()]
}

/// The six branch lines of `X_t` in `(u : v : w) = (x : z : -1)`, with the
/// intersection points named.
pub fn family_spec() -> ConfigurationSpec {
    let lines = vec![
        ("x=0".to_string(), s3("1", "0", "0")),
        ("z=0".to_string(), s3("0", "1", "0")),
        ("x=-1".to_string(), s3("1", "0", "-1")),
        ("z=-1".to_string(), s3("0", "1", "-1")),
        ("x=-zt".to_string(), s3("1", "t", "0")),
        ("l_inf".to_string(), s3("0", "0", "1")),
    ];
    let points = [
        ("E001", s3("0", "0", "1")),
        ("E010", s3("0", "1", "0")),
        ("E100", s3("1", "0", "0")),
        ("E011", s3("0", "1", "1")),
        ("E101", s3("1", "0", "1")),
        ("Ec", s3("1", "1", "1")),
        ("Ea", s3("-t", "1", "-t")),
        ("Eb", s3("-t", "1", "1")),
        ("E110", s3("-t", "1", "0")),
    ];
    ConfigurationSpec { lines, points: points.into_iter().map(|(l, c)| (l.to_string(), c)).collect() }
}

/// The configuration of `X_t` over `Q(t)`, or at a rational `t`. At `t = -1`
/// the points `Ec`, `Ea`, `Eb` merge into the triple point `E111`.
pub fn family_configuration(t: Option<&Rational>) -> Result<Configuration> {
    let generic = Configuration::from_spec(&family_spec())?;
    let Some(v) = t else { return Ok(generic) };
    if v.is_zero() {
        return Err(Error::ForbiddenParameter("t = 0: lines through a common point".into()));
    }
    let mut spec = generic.specialize("t", v)?;
    if *v == crate::arith::rat(-1) {
        spec.points.retain(|(l, _)| l != "Ea" && l != "Eb");
        for (l, _) in spec.points.iter_mut() {
            if l == "Ec" {
                *l = "E111".to_string();
            }
        }
    }
    Configuration::from_spec(&spec)
}

/// The two chains of eight curves; each spans an `E8(-1)`.
pub fn e8_chains() -> [Vec<String>; 2] {
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    [
        v(&["x=0", "E001^x=0", "E001", "E001^z=0", "z=0", "E101", "x=-1", "E001^x=-zt"]),
        v(&["E010", "E010^l_inf", "l_inf", "E100^l_inf", "E100", "E100^z=-1", "z=-1", "E110"]),
    ]
}

/// Twenty curves at `t = -1`: four extra curves and the two chains.
pub fn lemma_basis() -> Vec<String> {
    let mut out: Vec<String> = ["E011", "E010^x=0", "E111", "E111^x=-1"].iter().map(|s| s.to_string()).collect();
    for c in e8_chains() {
        out.extend(c);
    }
    out
}

/// Images of the generic curves in the `t = -1` curves: the three double
/// points that merge into `E111` go to sums through it, every other curve
/// keeps its name.
pub fn specialization_images(generic: &NodalCurveSet, special: &NodalCurveSet) -> Result<Vec<Vec<i64>>> {
    let merged = |label: &str| -> Option<[String; 3]> {
        let (a, b) = match label {
            "Ea" => ("x=-1", "x=-zt"),
            "Eb" => ("z=-1", "x=-zt"),
            "Ec" => ("x=-1", "z=-1"),
            _ => return None,
        };
        Some([second_label("E111", a), "E111".to_string(), second_label("E111", b)])
    };
    generic
        .labels()
        .iter()
        .map(|l| match merged(l) {
            Some(parts) => special.vector(&[&parts[0], &parts[1], &parts[2]]),
            None => special.vector(&[l]).map_err(|_| Error::Configuration(format!("no image for {l}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_arrangement() {
        let c = family_configuration(None).unwrap();
        assert_eq!(c.count_by_multiplicity(2), 6);
        assert_eq!(c.count_by_multiplicity(3), 3);
        let n = config_to_gram(&c).unwrap();
        assert_eq!(n.len(), 24);
        assert!(n.lattice.gram.iter().enumerate().all(|(i, r)| r[i] == -2));
        assert!(n.lattice.gram.iter().flatten().all(|&x| x == -2 || x == 0 || x == 1));
    }

    #[test]
    fn special_arrangement() {
        let c = family_configuration(Some(&crate::arith::rat(-1))).unwrap();
        assert_eq!(c.count_by_multiplicity(2), 3);
        assert_eq!(c.count_by_multiplicity(3), 4);
        assert_eq!(config_to_gram(&c).unwrap().len(), 25);
    }

    #[test]
    fn rational_parameter_matches_generic() {
        let c = family_configuration(Some(&crate::arith::rat(2))).unwrap();
        assert_eq!(config_to_gram(&c).unwrap().len(), 24);
        assert!(family_configuration(Some(&crate::arith::rat(0))).is_err());
    }

    #[test]
    fn single_double_point() {
        let spec = ConfigurationSpec {
            lines: vec![("a".into(), s3("1", "0", "0")), ("b".into(), s3("0", "1", "0"))],
            points: vec![("P".into(), s3("0", "0", "1"))],
        };
        let n = config_to_gram(&Configuration::from_spec(&spec).unwrap()).unwrap();
        let p = n.index_of("P").unwrap();
        assert_eq!(n.lattice.gram[p][n.index_of("a").unwrap()], 1);
        assert_eq!(n.lattice.gram[p][n.index_of("b").unwrap()], 1);
        assert_eq!(n.lattice.gram[p][p], -2);
    }

    #[test]
    fn unnamed_intersection_is_rejected() {
        let spec = ConfigurationSpec {
            lines: vec![("a".into(), s3("1", "0", "0")), ("b".into(), s3("0", "1", "0"))],
            points: vec![],
        };
        assert!(matches!(Configuration::from_spec(&spec), Err(Error::Configuration(_))));
    }

    #[test]
    fn chain_adjacency() {
        let n = config_to_gram(&family_configuration(None).unwrap()).unwrap();
        let [c1, _] = e8_chains();
        let i = |l: &str| n.index_of(l).unwrap();
        assert_eq!(n.lattice.gram[i(&c1[2])][i(&c1[7])], 1);
        assert_eq!(n.lattice.gram[i(&c1[0])][i(&c1[4])], 0);
    }
}
