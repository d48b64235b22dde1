use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symtotient::arith::factorize;
use symtotient::congruence::{self, CongruenceProblem};
use symtotient::symfield;
use symtotient::totient;
use symtotient::{Budget, SymSystem};

fn zero_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("N_e2");
    let sys = SymSystem::joint(5, [2]).unwrap();
    for p in [5u64, 7, 11] {
        group.bench_with_input(BenchmarkId::new("closed", p), &p, |b, &p| {
            b.iter(|| symfield::closed_n_e2(5, black_box(p)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("enumerated", p), &p, |b, &p| {
            b.iter(|| symfield::count_zeros_bruteforce(&sys, black_box(p), Budget::unlimited()).unwrap())
        });
    }
    group.finish();

    c.bench_function("mod2 e1e2 k=64", |b| {
        let sys = SymSystem::joint(64, [1, 2]).unwrap();
        b.iter(|| symfield::count_zeros_mod2(black_box(&sys)))
    });
}

fn totients(c: &mut Criterion) {
    let mut group = c.benchmark_group("phi_12");
    let sys = SymSystem::individual(3, [1, 2]).unwrap();
    for n in [30u64, 60, 120] {
        group.bench_with_input(BenchmarkId::new("product", n), &n, |b, &n| {
            b.iter(|| totient::phi(&sys, black_box(n), Budget::default()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("enumerated", n), &n, |b, &n| {
            b.iter(|| totient::phi_bruteforce(&sys, black_box(n), Budget::unlimited()).unwrap())
        });
    }
    group.finish();

    c.bench_function("jordan varphi n=10^12+39 k=4", |b| {
        let sys = SymSystem::joint(4, 1..=4).unwrap();
        b.iter(|| totient::varphi(&sys, black_box(1_000_000_000_039), Budget::default()).unwrap())
    });
}

fn congruences(c: &mut Criterion) {
    let prob = CongruenceProblem::symmetric(3, 1, 60, [2, 3]).unwrap();
    c.bench_function("g3 closed n=60", |b| b.iter(|| congruence::g3_closed(1, black_box(60)).unwrap()));
    c.bench_function("g3 enumerated n=60", |b| {
        b.iter(|| congruence::count_bruteforce(black_box(&prob), Budget::unlimited()).unwrap())
    });
}

fn factoring(c: &mut Criterion) {
    let mut group = c.benchmark_group("factorize");
    for n in [720_720u64, 1_000_000_007, 999_999_000_001, 18_446_744_073_709_551_557] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| factorize(black_box(n)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, zero_counts, totients, congruences, factoring);
criterion_main!(benches);
