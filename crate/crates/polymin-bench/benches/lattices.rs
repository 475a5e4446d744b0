use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polymin::exact_algebra::{build_generator_matrices, check_brackets};
use polymin::root_data::freudenthal_char;
use polymin::verification::{check_crossing_relations, check_diamond_relations};
use polymin::{build_lattice, E7Coefficients, RootSystem};
use polymin_bench::{families, skew};

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for family in families(2) {
        group.bench_with_input(BenchmarkId::from_parameter(family.name()), &family, |b, &f| {
            b.iter(|| build_lattice(black_box(f)))
        });
    }
    group.bench_function("skew_A3_(4,4,2,0)/(1,0,0,0)", |b| b.iter(|| skew(3, &[4, 4, 2, 0], &[1, 0, 0, 0])));
    group.finish();
}

fn coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficients");
    group.sample_size(10);
    for k in 1..=2 {
        let l = build_lattice(polymin::Family::E7 { k });
        group.bench_with_input(BenchmarkId::new("E7", k), &l, |b, l| {
            b.iter(|| E7Coefficients::new(l).expect("E7 lattice").all().expect("routes agree"))
        });
    }
    group.finish();
}

fn relations(c: &mut Criterion) {
    let l = build_lattice(polymin::Family::E7 { k: 2 });
    let p = E7Coefficients::new(&l).unwrap().all().unwrap();
    let rs = RootSystem::e7();
    let mut group = c.benchmark_group("relations_E7_k2");
    group.sample_size(10);
    group.bench_function("diamond", |b| b.iter(|| check_diamond_relations(&l.lattice, black_box(&p)).unwrap()));
    group.bench_function("crossing", |b| {
        b.iter(|| check_crossing_relations(&l.lattice, black_box(&p), rs.nodes()).unwrap())
    });
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let e7 = RootSystem::e7();
    let mut group = c.benchmark_group("freudenthal");
    group.sample_size(10);
    for k in 1..=3 {
        group.bench_with_input(BenchmarkId::new("E7_k_w1", k), &k, |b, &k| {
            b.iter(|| freudenthal_char(&e7, &[k, 0, 0, 0, 0, 0, 0]).unwrap())
        });
    }
    group.finish();
}

fn brackets(c: &mut Criterion) {
    let l = build_lattice(polymin::Family::E7 { k: 1 });
    let p = E7Coefficients::new(&l).unwrap().all().unwrap();
    let rs = RootSystem::e7();
    let mut group = c.benchmark_group("brackets");
    group.sample_size(10);
    group.bench_function("E7_k1", |b| {
        b.iter(|| {
            let gm = build_generator_matrices(&l.lattice, &p, rs.nodes()).unwrap();
            check_brackets(&gm, &rs).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, construction, coefficients, relations, oracles, brackets);
criterion_main!(benches);
