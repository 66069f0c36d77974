use criterion::{criterion_group, criterion_main, Criterion};
use coxsplit::checker::{analyze_reflection, conjugate_intersection_profile, AnalysisParams};
use coxsplit::ends::{default_schedule, estimate_relative_ends};
use coxsplit::walls::crossing_obstruction;
use coxsplit::{presets, CoxeterGroup, MembershipOracle, DEFAULT_VERTEX_BUDGET};

fn relative_ends(c: &mut Criterion) {
    let mut group = c.benchmark_group("relative-ends");
    group.sample_size(10);
    group.bench_function("affine-333 C(s1)", |b| {
        b.iter(|| {
            let g = CoxeterGroup::new(presets::affine_333());
            let h = MembershipOracle::Centralizer(0);
            estimate_relative_ends(&g, &h, &default_schedule(), DEFAULT_VERTEX_BUDGET).unwrap().verdict
        })
    });
    group.bench_function("racg-pentagon C(s1)", |b| {
        b.iter(|| {
            let g = CoxeterGroup::new(presets::racg_pentagon());
            let h = MembershipOracle::Centralizer(0);
            estimate_relative_ends(&g, &h, &[(2, 4), (3, 6)], DEFAULT_VERTEX_BUDGET).unwrap().verdict
        })
    });
    group.finish();
}

fn walls_and_profiles(c: &mut Criterion) {
    let mut group = c.benchmark_group("walls");
    group.sample_size(10);
    group.bench_function("crossings affine-333 R=5", |b| {
        b.iter(|| {
            let g = CoxeterGroup::new(presets::affine_333());
            crossing_obstruction(&g, 0, 5, DEFAULT_VERTEX_BUDGET).unwrap().crossing_count()
        })
    });
    group.bench_function("profile affine-333 r=4,8,12", |b| {
        b.iter(|| {
            let g = CoxeterGroup::new(presets::affine_333());
            let x = g.reduce(&[1, 0, 2]).unwrap();
            let h = MembershipOracle::Centralizer(0);
            conjugate_intersection_profile(&g, &h, &x, &[4, 8, 12], DEFAULT_VERTEX_BUDGET).unwrap().verdict
        })
    });
    group.bench_function("check-splitting affine-333 s1", |b| {
        b.iter(|| {
            let g = CoxeterGroup::new(presets::affine_333());
            analyze_reflection(&g, 0, &AnalysisParams::default()).unwrap().hypotheses.len()
        })
    });
    group.finish();
}

criterion_group!(benches, relative_ends, walls_and_profiles);
criterion_main!(benches);
