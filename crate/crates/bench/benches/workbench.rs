use criterion::{criterion_group, criterion_main, Criterion};
use k3corr_bench::{e8, gcd_pair};
use k3corr_core::arith::gcd::gcd;
use k3corr_core::arith::rat;
use k3corr_core::catalog::{build_catalog, Mode};
use k3corr_core::counting::count_report;
use k3corr_core::lattice::enumerate_roots;

fn arithmetic(c: &mut Criterion) {
    let (a, b) = gcd_pair();
    c.bench_function("poly gcd", |bch| bch.iter(|| gcd(&a, &b).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let cat = build_catalog(&Mode::Generic).unwrap();
    let iota = cat.map("iota").unwrap();
    c.bench_function("verify iota", |bch| bch.iter(|| iota.verify()));
    let mut g = c.benchmark_group("catalog");
    g.sample_size(10);
    g.bench_function("build t=-1", |bch| bch.iter(|| build_catalog(&Mode::At(rat(-1))).unwrap()));
    g.finish();
}

fn lattice(c: &mut Criterion) {
    let l = e8();
    c.bench_function("E8 roots", |bch| bch.iter(|| enumerate_roots(&l).unwrap()));
}

fn counting(c: &mut Criterion) {
    c.bench_function("count t=2 p=101", |bch| bch.iter(|| count_report(&rat(2), 101).unwrap()));
}

criterion_group!(benches, arithmetic, geometry, lattice, counting);
criterion_main!(benches);
