use k3corr_core::arith::{frac, rat, Poly};
use k3corr_core::counting::{
    ap_of_elliptic, count_affine_double_cover, count_report, fit_affine, trace_identity_scan, X_T_BRANCH,
};
use proptest::prelude::*;

/// Row-by-row count: for each x, every (z, y) with y^2 = F(x, z) by trial.
fn oracle_count(t: i64, p: u64) -> u64 {
    let f = |x: u64, z: u64| -> u64 {
        let t = t.rem_euclid(p as i64) as u64;
        x * z % p * ((x + 1) % p) % p * ((z + 1) % p) % p * ((x + z * t) % p) % p
    };
    let mut n = 0;
    for x in 0..p {
        for z in 0..p {
            let v = f(x, z);
            n += (0..p).filter(|y| y * y % p == v).count() as u64;
        }
    }
    n
}

#[test]
fn affine_count_matches_oracle() {
    for (t, p) in [(2i64, 7u64), (2, 11), (-3, 13), (1, 17)] {
        let f: Poly = X_T_BRANCH.parse::<Poly>().unwrap().specialize("t", &rat(t));
        assert_eq!(count_affine_double_cover(&f, ["x", "z"], p).unwrap(), oracle_count(t, p), "t = {t}, p = {p}");
    }
    // regression value
    assert_eq!(count_report(&rat(2), 7).unwrap().n0, 52);
}

#[test]
fn hasse_bound() {
    for t in [rat(1), rat(2), rat(3), rat(-3), frac(1, 2), frac(-5, 3)] {
        for row in trace_identity_scan(&t, 5, 97).unwrap().rows {
            let ap = row.count.ap;
            assert!((ap * ap) as u64 <= 4 * row.count.p, "t = {t}, p = {}", row.count.p);
        }
    }
}

#[test]
fn flipping_the_character_breaks_consistency() {
    for t in [rat(1), rat(2), rat(-3)] {
        let scan = trace_identity_scan(&t, 3, 97).unwrap();
        assert!(scan.consistent);
        assert!(scan.rows.iter().any(|r| r.count.chi == -1));
        let flipped: Vec<(u64, i64)> = scan
            .rows
            .iter()
            .map(|r| (r.count.p, r.count.delta + r.count.chi as i64 * (r.count.ap * r.count.ap - r.count.p as i64)))
            .collect();
        let (_, _, bad) = fit_affine(&flipped).unwrap();
        assert!(!bad.is_empty(), "t = {t}");
    }
}

#[test]
fn elliptic_trace_by_enumeration() {
    // y^2 = (x - 1)(x^2 - 1/(t+1)) at t = 1 over F_7: 7 affine points
    let e: Poly = "(x-1)*(x^2-1/2)".parse().unwrap();
    assert_eq!(ap_of_elliptic(&e, "x", 7).unwrap(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fit_is_order_independent(seed in any::<u64>()) {
        let scan = trace_identity_scan(&rat(2), 3, 61).unwrap();
        let mut pts: Vec<(u64, i64)> = scan.rows.iter().map(|r| (r.count.p, r.count.residual)).collect();
        let k = (seed as usize) % pts.len();
        pts.rotate_left(k);
        if seed % 2 == 0 {
            pts.reverse();
        }
        let (a, b, bad) = fit_affine(&pts).unwrap();
        prop_assert_eq!((a, b), (scan.a, scan.b));
        prop_assert!(bad.is_empty());
    }
}
