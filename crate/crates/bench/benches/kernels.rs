use criterion::{criterion_group, criterion_main, Criterion};
use ptosc_core::{
    cpt_norm, gauss_hermite, hermite_eval, pit_inner_product, sample_coherent_density, sample_density,
    CoherentSpec, ComplexScalar, EigenState, GridSpec, DEFAULT_QUAD_ORDER,
};
use std::hint::black_box;

fn special_functions(c: &mut Criterion) {
    c.bench_function("hermite_eval degree 24", |b| {
        b.iter(|| hermite_eval(black_box(ComplexScalar::new(1.3, 0.75)), 24))
    });
    c.bench_function("gauss_hermite 48", |b| b.iter(|| gauss_hermite(black_box(48))));
    c.bench_function("gauss_hermite 128", |b| b.iter(|| gauss_hermite(black_box(128))));
}

fn integrals(c: &mut Criterion) {
    let rule = gauss_hermite(DEFAULT_QUAD_ORDER).unwrap();
    let a = EigenState::new(4, 3, 1.5).unwrap();
    let b = EigenState::new(4, 1, 1.5).unwrap();
    c.bench_function("cpt_norm (4,3)", |bench| bench.iter(|| cpt_norm(black_box(&a), &rule)));
    c.bench_function("pit_inner_product (4,3)x(4,1)", |bench| {
        bench.iter(|| pit_inner_product(black_box(&a), black_box(&b), &rule))
    });
}

fn grids(c: &mut Criterion) {
    let spec = GridSpec::default();
    let state = EigenState::new(1, 1, 1.5).unwrap();
    let coherent = CoherentSpec::new(12, 1.0, std::f64::consts::FRAC_PI_2, 1.5).unwrap();
    let mut group = c.benchmark_group("grids");
    group.sample_size(10);
    group.bench_function("sample_density 201x201", |b| b.iter(|| sample_density(black_box(&state), &spec)));
    group.bench_function("sample_coherent_density N=12 201x201", |b| {
        b.iter(|| sample_coherent_density(black_box(&coherent), &spec))
    });
    group.finish();
}

criterion_group!(benches, special_functions, integrals, grids);
criterion_main!(benches);
