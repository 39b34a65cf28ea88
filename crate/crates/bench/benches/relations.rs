use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use spinpic_bench::level_pairs;
use spinpic_core::relations::{
    bis_relation, corollary_table, derive_main_via_deligne, main_relation,
};
use spinpic_core::BasisContext;

fn relation_family(c: &mut Criterion) {
    let pairs = level_pairs(12);
    c.bench_function("main_relation r<=12", |b| {
        b.iter(|| {
            for &(r, s) in &pairs {
                black_box(main_relation(&BasisContext::generic(r).unwrap(), s).unwrap());
            }
        })
    });
    c.bench_function("bis_relation r<=12", |b| {
        b.iter(|| {
            for &(r, s) in &pairs {
                black_box(bis_relation(&BasisContext::generic(r).unwrap(), s).unwrap());
            }
        })
    });
    c.bench_function("deligne r<=12", |b| {
        b.iter(|| {
            for &(r, s) in &pairs {
                black_box(derive_main_via_deligne(&BasisContext::generic(r).unwrap(), s).unwrap());
            }
        })
    });
    c.bench_function("finite genus 40, r=12", |b| {
        let ctx = BasisContext::finite(12, 40).unwrap();
        b.iter(|| black_box(main_relation(&ctx, 12).unwrap()))
    });
    c.bench_function("table r=2..8", |b| {
        b.iter(|| {
            for r in 2..=8 {
                black_box(corollary_table(r).unwrap());
            }
        })
    });
}

criterion_group!(benches, relation_family);
criterion_main!(benches);
