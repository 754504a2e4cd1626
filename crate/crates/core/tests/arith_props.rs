use k3corr_core::arith::{Poly, QuadExt, QuadField, RatFunc, Rational};
use proptest::prelude::*;

const VARS: [&str; 3] = ["t", "x", "z"];

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-4i64..=4, 0u32..=2, 0u32..=2, 0u32..=2), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, a, b, d)| {
            let m = Poly::var(VARS[0]).pow(a).mul(&Poly::var(VARS[1]).pow(b)).mul(&Poly::var(VARS[2]).pow(d));
            acc.add(&m.scale(&Rational::from_integer(c.into())))
        })
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributive_law(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
    }

    #[test]
    fn commutative_and_associative(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn reduction_is_idempotent(f in small_ratfunc()) {
        let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn field_laws_on_rational_functions(f in small_ratfunc(), g in small_ratfunc()) {
        let sum = f.add(&g);
        prop_assert_eq!(sum.sub(&g), f.clone());
        if !g.is_zero() {
            prop_assert_eq!(f.mul(&g).div(&g).unwrap(), f);
        }
    }

    #[test]
    fn norm_is_multiplicative(a0 in small_ratfunc(), a1 in small_ratfunc(), b0 in small_ratfunc(), b1 in small_ratfunc()) {
        let field = QuadField::new("s", "-t".parse().unwrap()).unwrap();
        let a = QuadExt::new(a0, a1, &field);
        let b = QuadExt::new(b0, b1, &field);
        prop_assert_eq!(a.mul(&b).unwrap().norm(), a.norm().mul(&b.norm()));
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn evaluation_mod_p_is_multiplicative(
        f in small_ratfunc(),
        g in small_ratfunc(),
        vals in (0u64..101, 0u64..101, 0u64..101),
    ) {
        let p = 101;
        let assign = move |v: &str| match v { "t" => Some(vals.0), "x" => Some(vals.1), "z" => Some(vals.2), _ => None };
        if let (Ok(a), Ok(b)) = (f.eval_mod(&assign, p), g.eval_mod(&assign, p)) {
            let fg = f.mul(&g).eval_mod(&assign, p).unwrap();
            prop_assert_eq!(fg, a * b % p);
        }
    }

    #[test]
    fn printing_round_trips(f in small_ratfunc()) {
        prop_assert_eq!(f.to_string().parse::<RatFunc>().unwrap(), f);
    }

    #[test]
    fn gcd_divides_both(a in nonzero_poly(), b in nonzero_poly(), g in nonzero_poly()) {
        let (ag, bg) = (a.mul(&g), b.mul(&g));
        let h = k3corr_core::arith::gcd(&ag, &bg).unwrap();
        prop_assert!(ag.div_exact(&h).is_some());
        prop_assert!(bg.div_exact(&h).is_some());
        prop_assert!(h.div_exact(&g.monic()).is_some());
    }
}
