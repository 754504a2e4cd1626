use k3corr_core::arith::rat;
use k3corr_core::lattice::gram::is_primitive;
use k3corr_core::lattice::matrix::{determinant, from_i64, mul, transpose};
use k3corr_core::lattice::{
    config_to_gram, disc_form_opposite_check, enumerate_roots, family_configuration, orthogonal_complement, pullback_gram,
    smith_normal_form, GramLattice,
};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        (0..n).map(|i| (0..n).map(|j| if i <= j { v[i * n + j] } else { v[j * n + i] }).collect()).collect()
    })
}

/// Unimodular matrices as products of elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (a, b, k, swap) in ops {
            if swap {
                m.swap(a, b);
            } else if a != b {
                let src = m[b].clone();
                for (x, y) in m[a].iter_mut().zip(src) {
                    *x += k * y;
                }
            }
        }
        m
    })
}

fn a2_sum() -> GramLattice {
    // A2(-1) + <-2> + <-2>, negative definite with 6 + 2 + 2 roots
    GramLattice::from_rows(vec![
        vec![-2, 1, 0, 0],
        vec![1, -2, 0, 0],
        vec![0, 0, -2, 0],
        vec![0, 0, 0, -2],
    ])
    .unwrap()
}

fn to_i64(m: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_product_of_divisors(g in symmetric(4)) {
        let m = from_i64(&g);
        let prod: BigInt = smith_normal_form(&m).diagonal().iter().product();
        prop_assert_eq!(determinant(&m).abs(), prod);
    }

    #[test]
    fn root_count_is_basis_invariant(u in unimodular(4)) {
        let l = a2_sum();
        let um = from_i64(&u);
        prop_assume!(determinant(&um).abs().is_one());
        let g = mul(&mul(&transpose(&um), &from_i64(&l.gram)), &um);
        let conj = GramLattice::from_rows(to_i64(&g)).unwrap();
        prop_assert_eq!(enumerate_roots(&conj).unwrap(), 10);
    }

    #[test]
    fn complements_are_primitive(g in symmetric(4), v in prop::collection::vec(-2i64..=2, 4)) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let l = GramLattice::from_rows(g).unwrap();
        let c = orthogonal_complement(&l, std::slice::from_ref(&v));
        let kernel = complement_vectors(&l, &v);
        prop_assert!(is_primitive(&kernel));
        for k in &kernel {
            prop_assert_eq!(l.pair(k, &v), 0);
        }
        prop_assert_eq!(&c.gram, &pullback_gram(&l, &kernel));
        prop_assert_eq!(c.dim(), kernel.len());
    }

    #[test]
    fn opposite_check_is_symmetric(a in prop::sample::select(vec![2i64, -2, 4, -4, 6]), b in prop::sample::select(vec![2i64, -2, 4, -4, 6])) {
        let la = GramLattice::diagonal(&[a]);
        let lb = GramLattice::diagonal(&[b]);
        prop_assert_eq!(disc_form_opposite_check(&la, &lb).pass, disc_form_opposite_check(&lb, &la).pass);
    }
}

/// Saturated kernel of `x -> (x, v)`.
fn complement_vectors(l: &GramLattice, v: &[i64]) -> Vec<Vec<i64>> {
    let row: Vec<i64> = (0..l.dim()).map(|i| (0..l.dim()).map(|j| l.gram[i][j] * v[j]).sum()).collect();
    let m = from_i64(&[row]);
    let k = k3corr_core::lattice::matrix::integer_kernel(&m, l.dim());
    to_i64(&k)
}

#[test]
fn opposite_check_examples() {
    assert!(disc_form_opposite_check(&GramLattice::diagonal(&[2]), &GramLattice::diagonal(&[-2])).pass);
    assert!(!disc_form_opposite_check(&GramLattice::diagonal(&[2]), &GramLattice::diagonal(&[2])).pass);
}

#[test]
fn configurations_give_even_minus_two_diagonals() {
    for t in [None, Some(rat(-1)), Some(rat(2)), Some(rat(5))] {
        let conf = family_configuration(t.as_ref()).unwrap();
        let curves = config_to_gram(&conf).unwrap();
        let l = &curves.lattice;
        assert!(l.is_even());
        assert!((0..l.dim()).all(|i| l.gram[i][i] == -2), "{t:?}");
    }
}
