use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use ratiolog_core::certify::builtin_certificate;
use ratiolog_core::exact::{prove_positive_on_integers, IntPoly};
use ratiolog_core::logbehavior::check_ratio_log_convex;
use ratiolog_core::sequences::catalog_lookup;

fn positivity(c: &mut Criterion) {
    // 16(21n^6 + 351n^5 + ...), positive with no integer roots.
    let p = IntPoly::from_i64s(&[716, 2940, 5304, 4605, 1935, 351, 21]).scale(&BigInt::from(16));
    c.bench_function("prove_positive_degree6", |b| {
        b.iter(|| prove_positive_on_integers(black_box(&p), &BigInt::from(1)).unwrap())
    });
}

fn generation_and_check(c: &mut Criterion) {
    let domb = catalog_lookup("domb").unwrap();
    c.bench_function("domb_terms_500", |b| b.iter(|| domb.terms(black_box(500)).unwrap()));
    let terms = domb.terms_through(184).unwrap();
    c.bench_function("domb_ratio_log_convex_2_181", |b| {
        b.iter(|| check_ratio_log_convex(black_box(&terms), true).unwrap())
    });
}

fn certificates(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify");
    group.sample_size(10);
    for name in ["derangement", "fine"] {
        let cert = builtin_certificate(name).unwrap();
        group.bench_function(name, |b| b.iter(|| cert.verify().unwrap()));
    }
    group.finish();
}

criterion_group!(benches, positivity, generation_and_check, certificates);
criterion_main!(benches);
