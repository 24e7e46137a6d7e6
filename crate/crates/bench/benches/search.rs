use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gapforge::codes::enumerate::min_weight_word;
use gapforge::field::make_field;
use gapforge::gadget::{boolean_slice_supports, exact_min_distance_real, SliceWeight};
use gapforge::Budget;
use gapforge_bench::{hadamard_gens, signs};
use std::hint::black_box;

fn min_weight(c: &mut Criterion) {
    let f2 = make_field(2, 1).unwrap();
    let budget = Budget::default();
    let mut g = c.benchmark_group("min_weight_word");
    for m in [8u32, 10, 12] {
        let gens = hadamard_gens(m);
        let len = gens[0].len();
        g.bench_with_input(BenchmarkId::from_parameter(m), &gens, |b, gens| {
            b.iter(|| min_weight_word(&f2, len, black_box(gens), None, &budget).unwrap())
        });
    }
    g.finish();
}

fn min_support(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("exact_min_distance_real");
    g.sample_size(20);
    for n in [10usize, 12, 14] {
        let r = signs(4, n, 1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &r, |b, r| b.iter(|| exact_min_distance_real(black_box(r), n, &budget).unwrap()));
    }
    g.finish();
}

fn slices(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("boolean_slice_supports");
    for n in [12usize, 16, 20] {
        let r = signs(3, n, 2);
        g.bench_with_input(BenchmarkId::from_parameter(n), &r, |b, r| {
            b.iter(|| boolean_slice_supports(black_box(r), SliceWeight::Exact(4), &budget).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, min_weight, min_support, slices);
criterion_main!(benches);
