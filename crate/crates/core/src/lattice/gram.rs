//! Lattices given by an integer Gram matrix.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{determinant, from_i64, integer_kernel, mul, smith_normal_form, IntMatrix};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::report::{Report, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramLattice {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub rank: usize,
    pub determinant: BigInt,
    /// `(positive, negative)` inertia.
    pub signature: (usize, usize),
    pub is_even: bool,
    pub definiteness: Definiteness,
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {}, det {}, signature ({},{}), {}",
            self.rank,
            self.determinant,
            self.signature.0,
            self.signature.1,
            if self.is_even { "even" } else { "odd" }
        )
    }
}

impl GramLattice {
    pub fn new(labels: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if labels.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(Error::Configuration("gram must be square with one label per row".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Configuration(format!("gram is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(GramLattice { labels, gram })
    }

    /// Unlabeled, with basis names `e1, e2, ...`.
    pub fn from_rows(gram: Vec<Vec<i64>>) -> Result<Self> {
        let labels = (1..=gram.len()).map(|i| format!("e{i}")).collect();
        Self::new(labels, gram)
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let n = d.len();
        let gram = (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect();
        Self::from_rows(gram).expect("diagonal is symmetric")
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn scaled(&self, k: i64) -> GramLattice {
        let gram = self.gram.iter().map(|r| r.iter().map(|x| x * k).collect()).collect();
        GramLattice { labels: self.labels.clone(), gram }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sub-Gram on the named basis vectors.
    pub fn restrict(&self, labels: &[&str]) -> Result<GramLattice> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| Error::UnknownEntry(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let gram = idx.iter().map(|&i| idx.iter().map(|&j| self.gram[i][j]).collect()).collect();
        GramLattice::new(labels.iter().map(|s| s.to_string()).collect(), gram)
    }

    fn big(&self) -> IntMatrix {
        from_i64(&self.gram)
    }

    /// `x . y` for integer coordinate vectors.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| x[i] * self.gram[i][j] * y[j]).sum::<i64>()).sum()
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.big())
    }

    pub fn invariants(&self) -> Invariants {
        let (pos, neg) = inertia(&self.gram);
        let rank = pos + neg;
        let n = self.dim();
        let definiteness = if rank < n {
            Definiteness::Degenerate
        } else if neg == 0 {
            Definiteness::Positive
        } else if pos == 0 {
            Definiteness::Negative
        } else {
            Definiteness::Indefinite
        };
        Invariants { rank, determinant: self.determinant(), signature: (pos, neg), is_even: self.is_even(), definiteness }
    }

    /// Invariant factors of the Gram matrix (the discriminant group when
    /// nondegenerate), zeros included for the radical.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        smith_normal_form(&self.big()).diagonal()
    }

    /// The lattice modulo its radical, on a basis of `Z^n / ker`.
    pub fn nondegenerate_quotient(&self) -> GramLattice {
        let s = smith_normal_form(&self.big());
        let r = s.rank();
        let basis: Vec<Vec<i64>> =
            (0..r).map(|j| s.v.iter().map(|row| row[j].to_i64().expect("small transform")).collect()).collect();
        self.sublattice(&basis, "q")
    }

    /// Gram of the sublattice spanned by integer vectors.
    pub fn sublattice(&self, vectors: &[Vec<i64>], prefix: &str) -> GramLattice {
        let gram = vectors.iter().map(|x| vectors.iter().map(|y| self.pair(x, y)).collect()).collect();
        let labels = (1..=vectors.len()).map(|i| format!("{prefix}{i}")).collect();
        GramLattice { labels, gram }
    }

    pub fn discriminant_form(&self) -> Result<DiscriminantForm> {
        DiscriminantForm::of(self)
    }
}

/// Positive and negative inertia via a rational `LDL^T` with symmetric
/// pivoting; a zero diagonal with a nonzero off-diagonal entry is fixed by
/// the congruence `e_i -> e_i + e_j`.
fn inertia(g: &[Vec<i64>]) -> (usize, usize) {
    let n = g.len();
    let mut a: Vec<Vec<Rational>> = g.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            a.swap(k, p);
            for r in a.iter_mut() {
                r.swap(k, p);
            }
        } else if let Some((i, j)) =
            (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        {
            // e_i += e_j, then pivot on i
            let rj = a[j].clone();
            for (x, y) in a[i].iter_mut().zip(&rj) {
                *x += y;
            }
            for r in a.iter_mut() {
                let y = r[j].clone();
                r[i] += y;
            }
            a.swap(k, i);
            for r in a.iter_mut() {
                r.swap(k, i);
            }
        } else {
            break;
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        for i in k + 1..n {
            a[i][k] = Rational::zero();
            a[k][i] = Rational::zero();
        }
    }
    (pos, neg)
}

/// Finite quadratic form on `L^* / L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantForm {
    /// Cyclic orders of the generators (all greater than one).
    pub orders: Vec<u64>,
    /// `q(g_i)` in `Q / 2Z`, normalized into `[0, 2)`.
    pub q: Vec<Rational>,
    /// `b(g_i, g_j)` in `Q / Z`, normalized into `[0, 1)`.
    pub b: Vec<Vec<Rational>>,
}

fn modulo(x: &Rational, m: i64) -> Rational {
    let m = Rational::from_integer(m.into());
    x - (x / &m).floor() * &m
}

impl DiscriminantForm {
    pub fn of(l: &GramLattice) -> Result<DiscriminantForm> {
        let g = l.big();
        let s = smith_normal_form(&g);
        if s.rank() < l.dim() {
            return Err(Error::Degenerate("discriminant form of a degenerate lattice".into()));
        }
        // L^* / L is generated by v_i / d_i (v_i the columns of V)
        let mut gens: Vec<Vec<Rational>> = Vec::new();
        let mut orders = Vec::new();
        for (i, d) in s.diagonal().iter().enumerate() {
            if d.is_one() {
                continue;
            }
            orders.push(d.to_u64().ok_or_else(|| Error::Degenerate("discriminant group too large".into()))?);
            gens.push(s.v.iter().map(|row| Rational::new(row[i].clone(), d.clone())).collect());
        }
        let pair = |x: &[Rational], y: &[Rational]| -> Rational {
            let n = x.len();
            let mut acc = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    if !g[i][j].is_zero() {
                        acc += &x[i] * Rational::from_integer(g[i][j].clone()) * &y[j];
                    }
                }
            }
            acc
        };
        let q = gens.iter().map(|x| modulo(&pair(x, x), 2)).collect();
        let b = gens.iter().map(|x| gens.iter().map(|y| modulo(&pair(x, y), 1)).collect()).collect();
        Ok(DiscriminantForm { orders, q, b })
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn negated(&self) -> DiscriminantForm {
        DiscriminantForm {
            orders: self.orders.clone(),
            q: self.q.iter().map(|x| modulo(&-x, 2)).collect(),
            b: self.b.iter().map(|r| r.iter().map(|x| modulo(&-x, 1)).collect()).collect(),
        }
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &d in &self.orders {
            out = out.into_iter().flat_map(|e| (0..d).map(move |c| [e.clone(), vec![c]].concat())).collect();
        }
        out
    }

    /// `q(sum c_i g_i)` in `Q / 2Z`.
    fn q_of(&self, c: &[u64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..c.len() {
            let ci = Rational::from_integer(c[i].into());
            acc += &ci * &ci * &self.q[i];
            for j in i + 1..c.len() {
                acc += Rational::from_integer(2.into()) * &ci * Rational::from_integer(c[j].into()) * &self.b[i][j];
            }
        }
        modulo(&acc, 2)
    }

    fn b_of(&self, c: &[u64], e: &[u64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..c.len() {
            for j in 0..e.len() {
                acc += Rational::from_integer((c[i] * e[j]).into()) * &self.b[i][j];
            }
        }
        modulo(&acc, 1)
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), d)| (a + b) % d).collect()
    }

    fn scale(&self, k: u64, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(a, d)| (a * k) % d).collect()
    }

    /// Exhaustive search for an isometry of finite quadratic forms.
    pub fn isomorphic(&self, other: &DiscriminantForm) -> Result<bool> {
        if self.order() != other.order() {
            return Ok(false);
        }
        if self.order() > 4096 {
            return Err(Error::Degenerate("discriminant group too large for exhaustive search".into()));
        }
        let mut a = self.orders.clone();
        let mut b = other.orders.clone();
        a.sort();
        b.sort();
        if a != b {
            return Ok(false);
        }
        let targets = other.elements();
        let mut images: Vec<Vec<u64>> = Vec::new();
        Ok(self.extend(other, &targets, &mut images))
    }

    fn extend(&self, other: &DiscriminantForm, targets: &[Vec<u64>], images: &mut Vec<Vec<u64>>) -> bool {
        let k = images.len();
        if k == self.orders.len() {
            return self.injective(other, images);
        }
        let d = self.orders[k];
        for y in targets {
            if other.scale(d, y).iter().any(|&c| c != 0) || other.q_of(y) != self.q[k] {
                continue;
            }
            if (0..k).any(|i| other.b_of(&images[i], y) != self.b[i][k]) {
                continue;
            }
            images.push(y.clone());
            if self.extend(other, targets, images) {
                return true;
            }
            images.pop();
        }
        false
    }

    fn injective(&self, other: &DiscriminantForm, images: &[Vec<u64>]) -> bool {
        let zero = vec![0; other.orders.len()];
        let mut seen = std::collections::HashSet::new();
        for c in self.elements() {
            let mut y = zero.clone();
            for (ci, img) in c.iter().zip(images) {
                y = other.add(&y, &other.scale(*ci, img));
            }
            if !seen.insert(y) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for DiscriminantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        let q: Vec<String> = self.q.iter().map(|x| x.to_string()).collect();
        write!(f, "{} with q = ({})", if group.is_empty() { "0".into() } else { group.join(" + ") }, q.join(", "))
    }
}

/// PASS when `q_B` is isometric to `-q_A`.
pub fn disc_form_opposite_check(a: &GramLattice, b: &GramLattice) -> Report {
    let claim = "discriminant forms are opposite";
    let run = || -> Result<(String, bool)> {
        let da = a.discriminant_form()?;
        let db = b.discriminant_form()?;
        if a.determinant().abs() != b.determinant().abs() {
            return Ok((format!("|det| {} vs {}", a.determinant().abs(), b.determinant().abs()), false));
        }
        let ok = db.isomorphic(&da.negated())?;
        Ok((format!("q_A: {da}; q_B: {db}"), ok))
    };
    match run() {
        Ok((computed, ok)) => Report::new(claim, computed, "q_B = -q_A", if ok { Verdict::Pass } else { Verdict::Fail }),
        Err(e) => Report::new(claim, e.to_string(), "q_B = -q_A", Verdict::Fail),
    }
}

/// All nonzero `x` with `x^T A x <= bound` for positive definite `A`, by
/// recursive completed-square bounds (exact over the rationals).
pub fn short_vectors(a: &[Vec<i64>], bound: i64) -> Result<Vec<Vec<i64>>> {
    let n = a.len();
    let (pos, _) = inertia(a);
    if pos != n {
        return Err(Error::Degenerate("short vectors need a positive definite form".into()));
    }
    // Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
    let mut q: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][i] * &q[i][l];
                q[k][l] -= v;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    descend(&q, n, &Rational::from_integer(bound.into()), &mut x, &mut out);
    out.retain(|v| v.iter().any(|&c| c != 0));
    Ok(out)
}

fn descend(q: &[Vec<Rational>], level: usize, remaining: &Rational, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let n = q.len();
    let mut center = Rational::zero();
    for j in i + 1..n {
        center -= &q[i][j] * Rational::from_integer(x[j].into());
    }
    let radius = (remaining / &q[i][i]).to_f64().unwrap_or(0.0).max(0.0).sqrt();
    let c = center.to_f64().unwrap_or(0.0);
    let lo = (c - radius).floor() as i64 - 1;
    let hi = (c + radius).ceil() as i64 + 1;
    for v in lo..=hi {
        let dv = Rational::from_integer(v.into()) - &center;
        let used = &q[i][i] * &dv * &dv;
        if &used > remaining {
            continue;
        }
        x[i] = v;
        descend(q, level - 1, &(remaining - used), x, out);
    }
    x[i] = 0;
}

/// Number of vectors of norm `-2` in a negative definite lattice.
pub fn enumerate_roots(l: &GramLattice) -> Result<usize> {
    if l.invariants().definiteness != Definiteness::Negative {
        return Err(Error::Degenerate("root enumeration needs a negative definite lattice".into()));
    }
    let pos = l.scaled(-1);
    let vs = short_vectors(&pos.gram, 2)?;
    Ok(vs.iter().filter(|v| pos.pair(v, v) == 2).count())
}

/// Decides isometry of two definite lattices of rank at most four by
/// searching images of a basis among short vectors.
pub fn definite_isometry_small(a: &GramLattice, b: &GramLattice) -> Result<Report> {
    let claim = "definite lattices are isometric";
    let ia = a.invariants();
    let ib = b.invariants();
    if a.dim() > 4 || b.dim() > 4 {
        return Err(Error::Degenerate("rank too large for the small isometry search".into()));
    }
    for i in [&ia, &ib] {
        if !matches!(i.definiteness, Definiteness::Positive | Definiteness::Negative) {
            return Err(Error::Degenerate("indefinite input: use the discriminant-form check".into()));
        }
    }
    let expected = "isometric";
    if a.dim() != b.dim() || ia.definiteness != ib.definiteness || ia.determinant != ib.determinant {
        return Ok(Report::new(claim, format!("{ia} vs {ib}"), expected, Verdict::Fail));
    }
    let sign = if ia.definiteness == Definiteness::Negative { -1 } else { 1 };
    let (a, b) = (a.scaled(sign), b.scaled(sign));
    let max = (0..a.dim()).map(|i| a.gram[i][i]).max().unwrap_or(0);
    let cands = short_vectors(&b.gram, max)?;
    let mut images: Vec<Vec<i64>> = Vec::new();
    let found = search_images(&a, &b, &cands, &mut images);
    let computed = if found { format!("basis images {images:?}") } else { "no basis image matches".to_string() };
    Ok(Report::new(claim, computed, expected, if found { Verdict::Pass } else { Verdict::Fail }))
}

fn search_images(a: &GramLattice, b: &GramLattice, cands: &[Vec<i64>], images: &mut Vec<Vec<i64>>) -> bool {
    let k = images.len();
    if k == a.dim() {
        // equal determinants make the images a basis
        return true;
    }
    for v in cands {
        if b.pair(v, v) != a.gram[k][k] {
            continue;
        }
        if (0..k).any(|i| b.pair(&images[i], v) != a.gram[i][k]) {
            continue;
        }
        images.push(v.clone());
        if search_images(a, b, cands, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Saturated orthogonal complement of the span of `vectors` (coordinates in
/// the basis of `l`).
pub fn orthogonal_complement(l: &GramLattice, vectors: &[Vec<i64>]) -> GramLattice {
    let n = l.dim();
    let g = l.big();
    let s: IntMatrix = vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let a = if s.is_empty() { vec![] } else { mul(&s, &g) };
    let kernel = integer_kernel(&a, n);
    let basis: Vec<Vec<i64>> = kernel.iter().map(|v| v.iter().map(|x| x.to_i64().expect("small kernel")).collect()).collect();
    l.sublattice(&basis, "c")
}

/// Whether the integer span of `vectors` is saturated in `Z^n`.
pub fn is_primitive(vectors: &[Vec<i64>]) -> bool {
    let m: IntMatrix = vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let s = smith_normal_form(&m);
    s.diagonal().iter().all(|d| d.is_zero() || d.is_one())
}

/// Gram matrix `M^T G M` for a linear map given by images of basis vectors.
pub fn pullback_gram(target: &GramLattice, images: &[Vec<i64>]) -> Vec<Vec<i64>> {
    images.iter().map(|x| images.iter().map(|y| target.pair(x, y)).collect()).collect()
}

/// Reduced even positive definite binary forms `[[a, b], [b, c]]` of the
/// given determinant.
pub fn reduced_binary_forms(det: i64) -> Vec<GramLattice> {
    let mut out = Vec::new();
    let mut a = 2;
    // reduced: |2b| <= a <= c, so 3a^2/4 <= det
    while 3 * a * a <= 4 * det {
        for b in -(a / 2)..=(a / 2) {
            let num = det + b * b;
            if num % a == 0 {
                let c = num / a;
                if c >= a && c % 2 == 0 && (b >= 0 || (2 * b.abs() != a && a != c)) {
                    out.push(GramLattice::from_rows(vec![vec![a, b], vec![b, c]]).expect("symmetric"));
                }
            }
        }
        a += 2;
    }
    out
}

/// Positive definite binary lattices whose discriminant form is opposite
/// to that of `ns` (the candidates for a rank-two transcendental lattice).
pub fn transcendental_candidates(ns: &GramLattice) -> Result<Vec<GramLattice>> {
    let det = ns.determinant().abs().to_i64().ok_or_else(|| Error::Degenerate("determinant too large".into()))?;
    let q = ns.discriminant_form()?.negated();
    let mut out = Vec::new();
    for t in reduced_binary_forms(det) {
        if t.discriminant_form()?.isomorphic(&q)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// `det` as a plain integer when it fits.
pub fn small(d: &BigInt) -> Option<i64> {
    d.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> GramLattice {
        // Dynkin chain 1-2-3-4-5-6-7 with node 8 on node 3, negative definite
        let mut g = vec![vec![0i64; 8]; 8];
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
        for i in 0..8 {
            g[i][i] = -2;
        }
        for (i, j) in edges {
            g[i][j] = 1;
            g[j][i] = 1;
        }
        GramLattice::from_rows(g).unwrap()
    }

    #[test]
    fn invariants_of_diagonal() {
        let inv = GramLattice::diagonal(&[2, 2, -2]).invariants();
        assert_eq!(inv.rank, 3);
        assert_eq!(inv.determinant, BigInt::from(-8));
        assert_eq!(inv.signature, (2, 1));
        assert!(inv.is_even);
    }

    #[test]
    fn inertia_with_zero_diagonal() {
        // hyperbolic plane
        let u = GramLattice::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(u.invariants().signature, (1, 1));
        let degenerate = GramLattice::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(degenerate.invariants().rank, 0);
    }

    #[test]
    fn e8_facts() {
        let l = e8();
        let inv = l.invariants();
        assert_eq!(inv.determinant, BigInt::one());
        assert_eq!(inv.definiteness, Definiteness::Negative);
        assert_eq!(enumerate_roots(&l).unwrap(), 240);
    }

    #[test]
    fn small_root_systems() {
        assert_eq!(enumerate_roots(&GramLattice::diagonal(&[-2])).unwrap(), 2);
        let a2 = GramLattice::from_rows(vec![vec![-2, 1], vec![1, -2]]).unwrap();
        assert_eq!(enumerate_roots(&a2).unwrap(), 6);
        assert!(enumerate_roots(&GramLattice::diagonal(&[2, -2])).is_err());
    }

    #[test]
    fn discriminant_forms() {
        let d = GramLattice::diagonal(&[2]).discriminant_form().unwrap();
        assert_eq!(d.orders, vec![2]);
        assert_eq!(d.q, vec![crate::arith::frac(1, 2)]);
        let d = GramLattice::diagonal(&[-2]).discriminant_form().unwrap();
        assert_eq!(d.q, vec![crate::arith::frac(3, 2)]);
        let d = GramLattice::diagonal(&[2, 2, -2]).discriminant_form().unwrap();
        assert_eq!(d.order(), 8);
    }

    #[test]
    fn opposite_checks() {
        let p = GramLattice::diagonal(&[2]);
        let m = GramLattice::diagonal(&[-2]);
        assert!(disc_form_opposite_check(&p, &m).is_pass());
        assert!(!disc_form_opposite_check(&p, &p).is_pass());
    }

    #[test]
    fn small_isometries() {
        let a = GramLattice::diagonal(&[2, 2]);
        assert!(definite_isometry_small(&a, &a).unwrap().is_pass());
        let b = GramLattice::from_rows(vec![vec![2, 1], vec![1, 2]]).unwrap();
        assert!(!definite_isometry_small(&a, &b).unwrap().is_pass());
        // same lattice in another basis
        let c = GramLattice::from_rows(vec![vec![2, 2], vec![2, 4]]).unwrap();
        assert!(definite_isometry_small(&a, &c).unwrap().is_pass());
        assert!(definite_isometry_small(&a, &GramLattice::diagonal(&[2, -2])).is_err());
    }

    #[test]
    fn complement_of_basis_vector() {
        let l = GramLattice::diagonal(&[2, 2, -2]);
        let c = orthogonal_complement(&l, &[vec![1, 0, 0]]);
        let inv = c.invariants();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.determinant, BigInt::from(-4));
        assert_eq!(inv.signature, (1, 1));
    }

    #[test]
    fn binary_forms_of_det_four() {
        let forms = reduced_binary_forms(4);
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].gram, vec![vec![2, 0], vec![0, 2]]);
        // det 3: only A2
        assert_eq!(reduced_binary_forms(3).len(), 1);
    }
}
