use criterion::{black_box, criterion_group, criterion_main, Criterion};

use excedance::algebra::cfrac::named_spec;
use excedance::algebra::Distribution;
use excedance::bijections::{phi, psi_fv};
use excedance::perm::all_permutations;
use excedance::{Stat, StatExpr};
use excedance_bench::symmetric_group;

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate S_8", |b| b.iter(|| all_permutations(black_box(8)).unwrap().count()));
    let s8 = symmetric_group(8);
    let stats: Vec<StatExpr> = [Stat::Des, Stat::Exc, Stat::Inv, Stat::Cpk].into_iter().map(StatExpr::from).collect();
    c.bench_function("des, exc, inv, cpk over S_8", |b| {
        b.iter(|| Distribution::of_perms(black_box(&s8), &stats).unwrap())
    });
    let vincular: Vec<StatExpr> = ["2-31", "31-2", "nest", "cros"].iter().map(|s| s.parse().unwrap()).collect();
    c.bench_function("vincular and arc statistics over S_8", |b| {
        b.iter(|| Distribution::of_perms(black_box(&s8), &vincular).unwrap())
    });
}

fn bijections(c: &mut Criterion) {
    let s8 = symmetric_group(8);
    c.bench_function("Φ on S_8", |b| b.iter(|| s8.iter().for_each(|p| drop(black_box(phi(p))))));
    let s7 = symmetric_group(7);
    c.bench_function("ψ_FV on S_7", |b| b.iter(|| s7.iter().for_each(|p| drop(black_box(psi_fv(p).unwrap())))));
}

fn fractions(c: &mut Criterion) {
    let j = named_spec("eulerian-j2").unwrap();
    c.bench_function("eulerian J-fraction to order 12", |b| b.iter(|| j.expand(black_box(12))));
    let a = named_spec("a-pqtuvw").unwrap();
    c.bench_function("six-variable J-fraction to order 6", |b| b.iter(|| a.expand(black_box(6))));
}

criterion_group!(benches, enumeration, bijections, fractions);
criterion_main!(benches);
