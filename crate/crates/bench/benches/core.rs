use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fieldcheck::fields::{alpha_field, beta_field, nth_product};
use fieldcheck::{fock, verify, SuiteParams};

fn modes(c: &mut Criterion) {
    let states = fock::basis_up_to(6);
    c.bench_function("alpha modes on degree <= 6", |b| {
        b.iter(|| {
            // A fresh field each time so the mode cache starts cold.
            let alpha = alpha_field();
            for s in &states {
                for n in -4..=4 {
                    black_box(alpha.mode_basis(n, s));
                }
            }
        })
    });
}

fn products(c: &mut Criterion) {
    let states = fock::basis_up_to(4);
    c.bench_function("alpha_(-1) beta modes", |b| {
        b.iter(|| {
            let p = nth_product(&alpha_field(), &beta_field(), -1);
            for s in &states {
                for n in -3..=3 {
                    black_box(p.mode_basis(n, s));
                }
            }
        })
    });
}

fn counterexample(c: &mut Criterion) {
    let p = SuiteParams {
        degree: 4,
        window: 4,
        n_max: 4,
        depth: 2,
    };
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    group.bench_function("counterexample D=4 W=4", |b| {
        b.iter(|| verify::counterexample_suite(black_box(&p)))
    });
    group.finish();
}

criterion_group!(benches, modes, products, counterexample);
criterion_main!(benches);
