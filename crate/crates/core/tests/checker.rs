use coxsplit::checker::{
    analyze_reflection, conjugate_intersection_profile, criterion_items, profile_sample, verify_paper_examples,
    AnalysisParams, BoundComparison, ProfileVerdict,
};
use coxsplit::bounds::family_system;
use coxsplit::{presets, CoxeterGroup, MembershipOracle, TriangleParams, Verdict, Q};

#[test]
fn pentagon_profile_stabilizes() {
    let g = CoxeterGroup::new(presets::racg_pentagon());
    let h = MembershipOracle::Centralizer(0);
    let s3 = g.generator(2).unwrap();
    let p = conjugate_intersection_profile(&g, &h, &s3, &[2, 4, 6], 100_000).unwrap();
    assert_eq!(p.counts, vec![(2, 2), (4, 2), (6, 2)]);
    assert_eq!(p.verdict, ProfileVerdict::Stabilized);
}

#[test]
fn parallel_walls_share_a_translation() {
    let g = CoxeterGroup::new(presets::affine_333());
    let h = MembershipOracle::Centralizer(0);
    let x = g.reduce(&[1, 0, 2]).unwrap();
    let p = conjugate_intersection_profile(&g, &h, &x, &[4, 8, 12], 100_000).unwrap();
    assert_eq!(p.counts, vec![(4, 1), (8, 3), (12, 5)]);
    assert_eq!(p.verdict, ProfileVerdict::Growing);
    // With radii 4, 6, 8 the step of the translation hides the growth.
    let p = conjugate_intersection_profile(&g, &h, &x, &[4, 6, 8], 100_000).unwrap();
    assert_eq!(p.verdict, ProfileVerdict::Stabilized);
}

#[test]
fn identity_profile_is_the_subgroup() {
    let g = CoxeterGroup::new(presets::affine_333());
    let h = MembershipOracle::Centralizer(0);
    let p = conjugate_intersection_profile(&g, &h, &g.identity(), &[2, 4, 6, 8], 100_000).unwrap();
    assert_eq!(p.counts, vec![(2, 2), (4, 2), (6, 4), (8, 6)]);
    assert!(p.counts.windows(2).all(|w| w[0].1 <= w[1].1));
}

#[test]
fn profile_sample_is_shortlex_and_outside_h() {
    let g = CoxeterGroup::new(presets::eight_generator_example(presets::ABOVE_FIFTY));
    let h = MembershipOracle::Centralizer(0);
    let sample = profile_sample(&g, &h, 3, 50, 100_000).unwrap();
    assert_eq!(sample.len(), 50);
    assert!(sample.windows(2).all(|w| w[0] < w[1]));
    for x in &sample {
        assert!(!h.contains(&g, x).unwrap());
    }
}

#[test]
fn affine_report() {
    let g = CoxeterGroup::new(presets::affine_333());
    let r = analyze_reflection(&g, 0, &AnalysisParams::default()).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert_eq!(r.relative_ends.as_ref().unwrap().verdict, Verdict::One);
    assert_eq!(r.halfspace_relative_ends.as_ref().unwrap().verdict, Verdict::Two);
    assert!(r.wall_certificate.as_ref().unwrap().passes());
    match r.bounds.as_ref().unwrap() {
        BoundComparison::General { lower_bound, trivial, .. } => {
            assert_eq!(*lower_bound, Q::new(-1, 2));
            assert!(trivial);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(r.crossings.as_ref().unwrap().crossing > 0);
    assert!(!r.summary.contains("splits"));
}

#[test]
fn family_report_uses_the_family_bound() {
    let t = TriangleParams::new(2, 3, 7).unwrap();
    let g = CoxeterGroup::new(family_system(8, t).unwrap());
    let params = AnalysisParams { vertex_budget: 5_000, ..AnalysisParams::default() };
    let r = analyze_reflection(&g, 0, &params).unwrap();
    match r.bounds.as_ref().unwrap() {
        BoundComparison::Family(b) => {
            assert_eq!(b.lower_bound, Q::new(163, 672));
            assert!(b.inequality_holds);
            assert!(b.sufficient_criterion_holds);
        }
        other => panic!("unexpected {other:?}"),
    }
    // Budget failures are partial results, not errors.
    assert!(!r.failures.is_empty());

    let r = analyze_reflection(&g, 1, &params).unwrap();
    assert!(matches!(r.bounds, Some(BoundComparison::General { .. })));
}

#[test]
fn finite_group_is_flagged() {
    let g = CoxeterGroup::new(presets::a2());
    let r = analyze_reflection(&g, 0, &AnalysisParams::default()).unwrap();
    assert_eq!(r.finite_order, Some(6));
    assert!(r.wall_certificate.is_none());
    assert!(analyze_reflection(&g, 5, &AnalysisParams::default()).is_err());
}

#[test]
fn suite_is_deterministic_and_complete() {
    let a = verify_paper_examples();
    let b = verify_paper_examples();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    for c in 1..=11 {
        assert!(a.items.iter().any(|i| i.criterion == c), "criterion {c}");
    }
    assert!(criterion_items(12).is_empty());
    assert_eq!(a.passed + a.failed, a.items.len());
}
