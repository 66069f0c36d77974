use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use coxsplit::{presets, Ball, CoxeterGroup, DEFAULT_VERTEX_BUDGET};

fn reduce_long_words(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce");
    let systems = [
        ("affine-333", presets::affine_333()),
        ("racg-square", presets::racg_square()),
        ("eight-generator", presets::eight_generator_example(presets::ABOVE_FIFTY)),
    ];
    for (name, sys) in systems {
        let rank = sys.rank() as u8;
        // Deterministic pseudo-random word of length 40.
        let word: Vec<u8> = (0..40u32).map(|k| ((k * 7 + k / 3) % rank as u32) as u8).collect();
        group.bench_with_input(BenchmarkId::from_parameter(name), &word, |b, w| {
            // Fresh memo every iteration, otherwise only the first run does work.
            b.iter(|| CoxeterGroup::new(sys.clone()).reduce(black_box(w)).unwrap())
        });
    }
    group.finish();
}

fn cayley_balls(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball");
    group.sample_size(10);
    for (name, sys, radius) in [
        ("affine-333", presets::affine_333(), 12),
        ("racg-pentagon", presets::racg_pentagon(), 6),
        ("free-product-3", presets::free_product_3(), 8),
    ] {
        group.bench_function(BenchmarkId::new(name, radius), |b| {
            b.iter(|| {
                let g = CoxeterGroup::new(sys.clone());
                Ball::build(&g, radius, DEFAULT_VERTEX_BUDGET).unwrap().len()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, reduce_long_words, cayley_balls);
criterion_main!(benches);
