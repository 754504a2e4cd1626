//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use k3corr_core::arith::fp::is_prime;
use k3corr_core::arith::{rat, Poly, QuadExt, QuadField, RatFunc, Rational};
use k3corr_core::catalog::{build_catalog, verify_items, Catalog, Entry, Mode, SuiteReport};
use k3corr_core::counting::trace_identity_scan;
use k3corr_core::lattice::matrix::{determinant, from_i64};
use k3corr_core::lattice::smith_normal_form;
use k3corr_core::report::{Report, Verdict};
use k3corr_core::surface::{pullback_two_form, sample_check_mod_p, TopForm};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion<'a> = (u32, &'static str, Option<Duration>, Box<dyn FnOnce() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn run_items(cat: &Catalog, items: &[&str]) -> Vec<SuiteReport> {
    items.iter().map(|i| verify_items(cat, Some(i)).expect("item exists")).collect()
}

/// Every report must pass; failures are summarised.
fn all_pass(reports: &[SuiteReport]) -> Outcome {
    let all: Vec<&Report> = reports.iter().flat_map(|r| &r.items).flat_map(|i| &i.reports).collect();
    let bad: Vec<String> = all
        .iter()
        .filter(|r| !r.is_pass())
        .map(|r| format!("{} [{}: computed {}, expected {}]", r.claim, r.verdict, clip(&r.computed), clip(&r.expected)))
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("{} checks pass", all.len()) } else { bad.join("; ") },
    }
}

fn clip(s: &str) -> String {
    if s.len() > 80 {
        format!("{}...", &s[..80])
    } else {
        s.to_string()
    }
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (pmax, limit) in [(97u64, Duration::from_secs(30)), (199, Duration::from_secs(300))] {
        let start = Instant::now();
        for t in [1, 2, 3, -3] {
            match trace_identity_scan(&rat(t), 3, pmax) {
                Ok(s) => {
                    pass &= s.consistent;
                    if pmax == 97 {
                        notes.push(format!("t={t}: (a,b)=({},{}) on {} primes", s.a, s.b, s.rows.len()));
                    }
                    if !s.consistent {
                        notes.push(format!("t={t}, p<={pmax}: violations at {:?}", s.violations));
                    }
                }
                Err(e) => {
                    pass = false;
                    notes.push(format!("t={t}: {e}"));
                }
            }
        }
        let took = start.elapsed();
        pass &= took < limit;
        notes.push(format!("p<={pmax} in {took:.2?}"));
    }
    Outcome { pass, detail: notes.join(", ") }
}

fn criterion_8(special: &Catalog) -> Outcome {
    let reports = run_items(special, &["quotient-map", "y-map", "vinberg-map"]);
    let verdict = |i: usize| reports[i].verdict;
    let vinberg = &reports[2].items[0].reports[0];
    let pass = verdict(0) == Verdict::Pass && verdict(1) == Verdict::Pass && verdict(2) == Verdict::Flagged;
    let y = &reports[1].items[0].reports[0].computed;
    Outcome {
        pass,
        detail: format!(
            "quotient identity {}, X_-1 -> Y {} ({y}), Vinberg map {} ({})",
            verdict(0),
            verdict(1),
            verdict(2),
            vinberg.computed
        ),
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let vars = ["t", "x", "z"];
    (0..rng.gen_range(1..5)).fold(Poly::zero(), |acc, _| {
        let m = vars.iter().fold(Poly::one(), |m, v| m.mul(&Poly::var(v).pow(rng.gen_range(0..3))));
        acc.add(&m.scale(&Rational::from_integer(rng.gen_range(-4i64..=4).into())))
    })
}

fn criterion_9(generic: &Catalog) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    // ring and norm laws
    let field = QuadField::new("s", "-t".parse().unwrap()).unwrap();
    for _ in 0..40 {
        let (a, b, c) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
        if a.add(&b).mul(&c) != a.mul(&c).add(&b.mul(&c)) {
            failures.push("distributivity".to_string());
        }
        let q = |p: &Poly, r: &Poly| QuadExt::new(RatFunc::from_poly(p.clone()), RatFunc::from_poly(r.clone()), &field);
        let (x, y) = (q(&a, &b), q(&c, &random_poly(&mut rng)));
        if QuadExt::base(x.mul(&y).unwrap().norm()) != QuadExt::base(x.norm().mul(&y.norm())) {
            failures.push("norm multiplicativity".to_string());
        }
    }
    // Smith form against determinant
    for _ in 0..40 {
        let n = 4;
        let v: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-3..=3)).collect();
        let g: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| if i <= j { v[i * n + j] } else { v[j * n + i] }).collect()).collect();
        let m = from_i64(&g);
        let prod: BigInt = smith_normal_form(&m).diagonal().iter().product();
        if determinant(&m).abs() != prod {
            failures.push(format!("SNF of {g:?}"));
        }
    }
    // chain rule
    for (a, b) in [("iota", "quotient"), ("cremona2", "linear78"), ("psi^-1", "psi")] {
        let (m1, m2) = (generic.map(a).unwrap(), generic.map(b).unwrap());
        let omega = TopForm::standard(m2.target()).unwrap();
        let direct = pullback_two_form(&m1.then(m2).unwrap(), &omega).unwrap();
        let stepwise = pullback_two_form(m1, &pullback_two_form(m2, &omega).unwrap()).unwrap();
        if direct.coeff() != stepwise.coeff() {
            failures.push(format!("chain rule {a}, {b}"));
        }
    }
    // sampling agrees with symbolic verification, 3 primes per map
    let params: [(&str, Rational); 1] = [("t", rat(2))];
    let mut maps = 0;
    for (name, e) in generic.entries() {
        let Entry::Map(m) = e else { continue };
        maps += 1;
        let mut good = 0;
        for p in (101u64..3000).filter(|&n| is_prime(n)) {
            let Ok(out) = sample_check_mod_p(m, &params, p, 40, p) else { continue };
            if out.failures > 0 {
                failures.push(format!("{name} mod {p}: {} failures", out.failures));
            }
            good += 1;
            if good == 3 {
                break;
            }
        }
        if good < 3 {
            failures.push(format!("{name}: fewer than 3 usable primes"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("ring/norm, SNF, chain rule and sampling of {maps} maps on 3 primes each: 0 failures")
        } else {
            failures.join("; ")
        },
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            o.pass = false;
            o.detail = format!("{} (over the {limit:?} budget)", o.detail);
        }
    }
    (o, took)
}

fn main() -> ExitCode {
    let generic = build_catalog(&Mode::Generic).expect("generic catalog");
    let special = build_catalog(&Mode::At(rat(-1))).expect("t = -1 catalog");
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: Vec<Criterion> = vec![
        (1, "Nikulin involution and quotient", secs(1), Box::new(|| all_pass(&run_items(&generic, &["nikulin"])))),
        (2, "fibration and group law", secs(5), Box::new(|| all_pass(&run_items(&generic, &["fibration"])))),
        (
            3,
            "Cremona chain and 2-form sum",
            secs(30),
            Box::new(|| all_pass(&[verify_items(&generic, Some("cremona")).unwrap(), verify_items(&generic, Some("two-form-sum")).unwrap()])),
        ),
        (4, "Kummer identification and psi", secs(10), Box::new(|| all_pass(&run_items(&generic, &["kummer", "tangency", "psi"])))),
        (
            5,
            "split Jacobian, d and rho",
            secs(10),
            Box::new(|| all_pass(&run_items(&generic, &["split-jacobian", "rho", "rho-form"]))),
        ),
        (
            6,
            "lattices",
            secs(60),
            Box::new(|| {
                let mut r = run_items(&special, &["configuration", "e8-chains", "gram-20", "complement", "five-fold", "e8-swap"]);
                r.extend(run_items(&generic, &["configuration", "e8-chains"]));
                all_pass(&r)
            }),
        ),
        (7, "trace identity", None, Box::new(criterion_7)),
        (8, "t = -1 suite", None, Box::new(|| criterion_8(&special))),
        (9, "property suites", None, Box::new(|| criterion_9(&generic))),
    ];
    let mut failed = 0;
    for (n, title, limit, f) in criteria {
        let (o, took) = timed(limit, f);
        if !o.pass {
            failed += 1;
        }
        println!("criterion {n} {}: {title} ({took:.2?}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
