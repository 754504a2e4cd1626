//! Fixtures shared by the benchmarks.

use k3corr_core::arith::Poly;
use k3corr_core::lattice::GramLattice;

/// The negative E8 lattice from its Dynkin diagram (branch at the third node).
pub fn e8() -> GramLattice {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in edges {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    GramLattice::from_rows(g).expect("symmetric")
}

/// Two trivariate polynomials with a common factor of total degree 7.
pub fn gcd_pair() -> (Poly, Poly) {
    let p = |s: &str| s.parse::<Poly>().expect("valid polynomial");
    let g = p("(x*z + t)^2*(x - z + 1)*(t*z + 1)");
    (g.mul(&p("x^3 - t*z^2 + 5")), g.mul(&p("z^3 + x*t - 7")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use k3corr_core::lattice::enumerate_roots;

    #[test]
    fn fixtures() {
        assert_eq!(enumerate_roots(&e8()).unwrap(), 240);
        let (a, b) = gcd_pair();
        assert_eq!(k3corr_core::arith::gcd::gcd(&a, &b).unwrap().total_degree(), 7);
    }
}
