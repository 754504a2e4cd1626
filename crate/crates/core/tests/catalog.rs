use k3corr_core::arith::rat;
use k3corr_core::catalog::{build_catalog, Entry, Mode};
use k3corr_core::Error;

#[test]
fn generic_catalog_is_complete_and_deterministic() {
    let a = build_catalog(&Mode::Generic).unwrap();
    let b = build_catalog(&Mode::Generic).unwrap();
    assert!(a.len() >= 25);
    let names: Vec<&str> = a.names().collect();
    assert_eq!(names, b.names().collect::<Vec<_>>());
    for n in names {
        assert_eq!(a.show(n).unwrap(), b.show(n).unwrap(), "{n}");
    }
    for n in [
        "X_t", "E_t", "E_t^(t+1)", "iota", "V_t", "fibration", "cremona1", "cremona2", "linear78", "W_t", "b",
        "coords910", "C_t", "psi", "Km(JC_t)^(-t-1)", "phi_C", "F_t", "F_t'", "alpha", "alpha'", "rho", "d",
        "configuration", "e8-chain-1", "e8-chain-2",
    ] {
        assert!(a.get(n).is_ok(), "missing {n}");
    }
}

#[test]
fn specialization_keeps_extension_where_needed() {
    let cat = build_catalog(&Mode::At(rat(2))).unwrap();
    // s^2 = -2 stays irrational
    let s = cat.field("s").unwrap().expect("field");
    assert_eq!(s.d().to_string(), "-2");
    let x = cat.surface("X_t").unwrap();
    assert!(x.branch().as_base().unwrap().vars().iter().all(|v| v != "t"));
    // r^2 = 16 at t = 3 splits
    let cat = build_catalog(&Mode::At(rat(3))).unwrap();
    assert!(cat.field("r").unwrap().is_none());
}

#[test]
fn forbidden_parameter() {
    assert!(matches!(build_catalog(&Mode::At(rat(0))), Err(Error::ForbiddenParameter(_))));
}

#[test]
fn special_fibre_catalog() {
    let cat = build_catalog(&Mode::At(rat(-1))).unwrap();
    assert!(cat.get("vinberg-map").is_ok());
    assert!(cat.get("vinberg-labels").is_ok());
    assert!(matches!(cat.get("X_-1").unwrap(), Entry::Surface(_)));
    assert!(cat.get("phi").is_err());
}

#[test]
fn manifest_round_trip() {
    let cat = build_catalog(&Mode::Generic).unwrap();
    let text = cat.show("psi").unwrap();
    assert!(text.starts_with("map psi"));
    assert!(cat.list().lines().any(|l| l.starts_with("surface") && l.ends_with("W_t")));
}
