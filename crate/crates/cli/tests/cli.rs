use std::process::{Command, Output};

fn k3corr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3corr")).args(args).env_remove("K3CORR_JOBS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cremona_passes() {
    let o = k3corr(&["verify", "--t", "generic", "--item", "cremona"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("overall: PASS"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--t", "0"][..],
        &["count", "--t", "-1"],
        &["count"],
        &["count", "--t", "2", "--pmin", "50", "--pmax", "10"],
        &["verify", "--item", "no-such-item"],
        &["verify", "--t", "0.5"],
        &["catalog", "show", "no-such-entry"],
        &["frobnicate"],
        &["verify", "--jobs", "0"],
    ] {
        assert_eq!(code(&k3corr(args)), 2, "{args:?}");
    }
}

#[test]
fn flagged_needs_permission() {
    let o = k3corr(&["verify", "--t", "-1", "--item", "vinberg-map"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FLAGGED"));
    assert_eq!(code(&k3corr(&["verify", "--t", "-1", "--item", "vinberg-map", "--allow-flagged"])), 0);
}

#[test]
fn failing_item_exits_one_even_when_flagged_allowed() {
    let o = k3corr(&["verify", "--item", "split-jacobian", "--allow-flagged"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn lattice_reports() {
    let o = k3corr(&["lattice", "--t", "-1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("rank 20, det -4: PASS"));
    let o = k3corr(&["lattice", "--t", "generic"]);
    assert_eq!(stdout(&o).matches("240 roots: PASS").count(), 2);
    let o = k3corr(&["lattice", "--t", "-1", "--item", "five-fold"]);
    assert!(stdout(&o).contains("order-5 automorphism"));
    assert_eq!(code(&o), 0);
}

#[test]
fn count_scans() {
    let o = k3corr(&["count", "--t", "2", "--pmax", "97"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("consistent: PASS"));

    let o = k3corr(&["count", "--t", "1", "--pmax", "11", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["p"].as_u64().unwrap()).collect::<Vec<_>>(), [3, 5, 7, 11]);
    for r in rows {
        for f in ["p", "N0", "ap", "chi", "residual"] {
            assert!(r.get(f).is_some(), "{f}");
        }
    }
}

#[test]
fn json_is_reproducible_and_matches_text() {
    let args = ["verify", "--t", "-1", "--json"];
    let a = k3corr(&args);
    let b = k3corr(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&a), code(&b));

    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let text = stdout(&k3corr(&args[..3]));
    for item in v["items"].as_array().unwrap() {
        let line = format!("{:<24} {}", item["name"].as_str().unwrap(), item["verdict"].as_str().unwrap());
        assert!(text.lines().any(|l| l == line), "{line}");
    }
}

#[test]
fn catalog_lists_and_shows() {
    let o = k3corr(&["catalog", "list"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().count() >= 25);
    let o = k3corr(&["catalog", "show", "psi"]);
    assert!(stdout(&o).starts_with("map psi:"));
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_k3corr"))
        .args(["count", "--t", "3", "--pmax", "40"])
        .env("K3CORR_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("skipped p = 3"));
}
