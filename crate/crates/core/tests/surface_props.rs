use std::sync::OnceLock;

use k3corr_core::arith::{rat, Poly, Rational};
use k3corr_core::catalog::{build_catalog, Catalog, Entry, Mode};
use k3corr_core::surface::{pullback_two_form, sample_check_mod_p, symmetrize_product, RationalMap, TopForm};
use k3corr_core::Error;
use proptest::prelude::*;

fn generic() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| build_catalog(&Mode::Generic).unwrap())
}

fn chain_rule(m1: &RationalMap, m2: &RationalMap) {
    let omega = TopForm::standard(m2.target()).unwrap();
    let direct = pullback_two_form(&m1.then(m2).unwrap(), &omega).unwrap();
    let stepwise = pullback_two_form(m1, &pullback_two_form(m2, &omega).unwrap()).unwrap();
    assert_eq!(direct.coeff(), stepwise.coeff(), "{} then {}", m1.name(), m2.name());
}

#[test]
fn pullback_chain_rule() {
    let cat = generic();
    chain_rule(cat.map("iota").unwrap(), cat.map("quotient").unwrap());
    chain_rule(cat.map("iota").unwrap(), cat.map("iota").unwrap());
    chain_rule(cat.map("psi^-1").unwrap(), cat.map("psi").unwrap());
    chain_rule(cat.map("cremona2").unwrap(), cat.map("linear78").unwrap());
    chain_rule(cat.map("phi_C").unwrap(), cat.map("alpha").unwrap());
}

#[test]
fn conjugation_commutes_with_compose_and_pullback() {
    let cat = generic();
    let (c2, lin) = (cat.map("cremona2").unwrap(), cat.map("linear78").unwrap());
    let conj_of_composite = c2.then(lin).unwrap().conjugate();
    let composite_of_conj = c2.conjugate().then(&lin.conjugate()).unwrap();
    assert_eq!(conj_of_composite.images(), composite_of_conj.images());

    let psi = cat.map("psi").unwrap();
    let omega = TopForm::standard(psi.target()).unwrap();
    let a = pullback_two_form(psi, &omega).unwrap().conj();
    let b = pullback_two_form(&psi.conjugate(), &omega.conj()).unwrap();
    assert_eq!(a.coeff().to_ratfunc(), b.coeff().to_ratfunc());

    assert_eq!(psi.conjugate().conjugate().images(), psi.images());
}

/// Every symbolically verified map of the generic catalog, sampled at
/// `t = 2` on three primes where its generators are defined.
#[test]
fn sampling_agrees_with_symbolic_verification() {
    let cat = generic();
    let params: [(&str, Rational); 1] = [("t", rat(2))];
    for (name, e) in cat.entries() {
        let Entry::Map(m) = e else { continue };
        // too large to verify symbolically more than once; covered below
        if name == "phi'" {
            continue;
        }
        assert!(m.verify().is_pass(), "{name}");
        let mut primes = 0;
        for p in (101u64..2000).filter(|&n| k3corr_core::arith::fp::is_prime(n)) {
            match sample_check_mod_p(m, &params, p, 60, p) {
                Ok(out) => {
                    assert_eq!(out.failures, 0, "{name} at p = {p}");
                    primes += 1;
                }
                Err(Error::Contract(_)) | Err(Error::TooFewSamples { .. }) | Err(Error::BadPrime { .. }) => continue,
                Err(e) => panic!("{name}: {e}"),
            }
            if primes == 3 {
                break;
            }
        }
        assert_eq!(primes, 3, "{name}");
    }
    let phi_c = cat.map("phi'").unwrap();
    for p in [103u64, 107, 131] {
        // -2 must be a square mod p for s to exist
        if let Ok(out) = sample_check_mod_p(phi_c, &params, p, 60, 7) {
            assert_eq!(out.failures, 0);
        }
    }
}

#[test]
fn broken_map_is_caught_by_sampling() {
    let cat = generic();
    let x = cat.surface("X_t").unwrap();
    let bad = RationalMap::parse("bad", x, x, &["1/z", "1/x", "y/(x^2*z^2)+1"], None).unwrap();
    assert!(!bad.verify().is_pass());
    let out = sample_check_mod_p(&bad, &[("t", rat(2))], 101, 100, 3).unwrap();
    assert!(out.failures > 0);
}

fn univariate(coeffs: &[i64]) -> Poly {
    coeffs
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (k, &c)| acc.add(&Poly::var("x").pow(k as u32).scale(&rat(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetrization_resubstitutes(coeffs in prop::collection::vec(-5i64..=5, 1..=7)) {
        let f = univariate(&coeffs);
        let big_f = symmetrize_product(&f, "x", "xi", "zeta").unwrap();
        let x1 = Poly::var("a");
        let x2 = Poly::var("b");
        let back = big_f.subst(&[("xi".into(), x1.mul(&x2)), ("zeta".into(), x1.add(&x2))]);
        let f1 = f.subst(&[("x".into(), x1.clone())]);
        let f2 = f.subst(&[("x".into(), x2.clone())]);
        prop_assert!(back.sub(&f1.mul(&f2)).is_zero());
    }
}
