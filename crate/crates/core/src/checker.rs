//! Per-reflection analysis and the built-in example suite.
//!
//! The checker gathers evidence for the hypotheses of the splitting theorems
//! (relative ends, wall certificates, Betti-number inequalities and
//! malnormality probes). It never concludes that a group splits: every
//! verdict here is relative to the radii it was computed at.

use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{Ball, LayeredGraph, MembershipOracle};
use crate::bounds::{self, BoundReport, TriangleParams};
use crate::ends::{self, EndsEstimate, Verdict};
use crate::error::{Error, Result};
use crate::finite_oracle;
use crate::group::{CoxeterGroup, Element};
use crate::presets;
use crate::rational::Q;
use crate::walls::{self, CrossingVerdict, Halfspace, WallCertificate};

#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProfileVerdict {
    Stabilized,
    Growing,
}

/// Sizes of `H ∩ H^g ∩ B_r` for increasing `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionProfile {
    pub g: Element,
    pub counts: Vec<(usize, usize)>,
    pub verdict: ProfileVerdict,
}

/// Counts `h` in `B_r` with `h` and `g^-1 h g` both in `H`.
pub fn conjugate_intersection_profile(
    group: &CoxeterGroup,
    oracle: &MembershipOracle,
    g: &Element,
    radii: &[usize],
    vertex_budget: usize,
) -> Result<IntersectionProfile> {
    check_radii(radii)?;
    let ball = Ball::build(group, *radii.last().expect("nonempty"), vertex_budget)?;
    let members = members_in_ball(group, oracle, &ball)?;
    profile_from_members(group, oracle, g, radii, &members)
}

fn check_radii(radii: &[usize]) -> Result<()> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("radii must be nonempty and strictly increasing".into()));
    }
    Ok(())
}

fn members_in_ball(
    group: &CoxeterGroup,
    oracle: &MembershipOracle,
    ball: &Ball,
) -> Result<Vec<Element>> {
    let flags = ball
        .vertices()
        .par_iter()
        .map(|h| oracle.contains(group, h))
        .collect::<Result<Vec<_>>>()?;
    Ok(ball.vertices().iter().zip(flags).filter(|(_, f)| *f).map(|(h, _)| h.clone()).collect())
}

fn profile_from_members(
    group: &CoxeterGroup,
    oracle: &MembershipOracle,
    g: &Element,
    radii: &[usize],
    members: &[Element],
) -> Result<IntersectionProfile> {
    let mut lengths = Vec::new();
    for h in members {
        if oracle.contains(group, &group.conjugate_by(h, g)?)? {
            lengths.push(h.length());
        }
    }
    let counts: Vec<(usize, usize)> =
        radii.iter().map(|&r| (r, lengths.iter().filter(|&&l| l <= r).count())).collect();
    let verdict = match counts.as_slice() {
        [.., (_, a), (_, b)] if a == b => ProfileVerdict::Stabilized,
        [_] => ProfileVerdict::Stabilized,
        _ => ProfileVerdict::Growing,
    };
    Ok(IntersectionProfile { g: g.clone(), counts, verdict })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisParams {
    pub schedule: Vec<(usize, usize)>,
    pub wall_radius: usize,
    pub crossing_radius: usize,
    pub profile_radii: Vec<usize>,
    pub sample_length: usize,
    pub sample_cap: usize,
    pub vertex_budget: usize,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        AnalysisParams {
            schedule: ends::default_schedule(),
            wall_radius: 6,
            crossing_radius: 3,
            profile_radii: vec![4, 8, 12],
            sample_length: 3,
            sample_cap: 50,
            vertex_budget: 50_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingSummary {
    pub radius: usize,
    pub translates_tested: usize,
    pub crossing: usize,
    /// ShortLex-least crossing translate, if any.
    pub first_crossing: Option<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundComparison {
    /// The system is an instance of the `W_n` family and `i` is its first generator.
    Family(Box<BoundReport>),
    /// Only the general lower bound for `beta(W)` is available.
    General { lower_bound: Q, trivial: bool, caveat: &'static str },
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Evidence,
    NoEvidence,
    NotApplicable,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionReport {
    #[serde(serialize_with = "crate::system::serialize_one_based")]
    pub generator: usize,
    pub params: AnalysisParams,
    /// Order of the group when the ball saturates, i.e. the group is finite.
    pub finite_order: Option<usize>,
    pub relative_ends: Option<EndsEstimate>,
    pub halfspace_relative_ends: Option<EndsEstimate>,
    pub wall_certificate: Option<WallCertificate>,
    pub crossings: Option<CrossingSummary>,
    pub bounds: Option<BoundComparison>,
    pub profiles: Vec<IntersectionProfile>,
    pub hypotheses: Vec<Hypothesis>,
    pub summary: String,
    pub warnings: Vec<String>,
    pub failures: Vec<String>,
}

fn record<T>(failures: &mut Vec<String>, what: &str, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            failures.push(format!("{what}: {e}"));
            None
        }
    }
}

/// Sample of translates for the malnormality probe: elements of length at
/// most `max_len` outside `H`, in ShortLex order, at most `cap` of them.
pub fn profile_sample(
    group: &CoxeterGroup,
    oracle: &MembershipOracle,
    max_len: usize,
    cap: usize,
    vertex_budget: usize,
) -> Result<Vec<Element>> {
    let ball = Ball::build(group, max_len, vertex_budget)?;
    let mut out = Vec::new();
    for g in ball.vertices() {
        if out.len() == cap {
            break;
        }
        if !oracle.contains(group, g)? {
            out.push(g.clone());
        }
    }
    Ok(out)
}

pub fn analyze_reflection(
    group: &CoxeterGroup,
    i: usize,
    params: &AnalysisParams,
) -> Result<ReflectionReport> {
    group.system().check_gen(i)?;
    let mut report = ReflectionReport {
        generator: i,
        params: params.clone(),
        finite_order: None,
        relative_ends: None,
        halfspace_relative_ends: None,
        wall_certificate: None,
        crossings: None,
        bounds: None,
        profiles: Vec::new(),
        hypotheses: Vec::new(),
        summary: String::new(),
        warnings: Vec::new(),
        failures: Vec::new(),
    };
    let failures = &mut report.failures;

    let probe_radius = params.schedule.last().map_or(params.wall_radius, |p| p.1);
    let (probe, _) = Ball::build_capped(group, probe_radius, params.vertex_budget);
    if probe.is_saturated() {
        report.finite_order = Some(probe.len());
        report.hypotheses.push(Hypothesis {
            name: "infinite group",
            status: Status::NotApplicable,
            detail: format!("the group is finite of order {}", probe.len()),
        });
        report.summary = format!(
            "finite group of order {}; walls do not give almost-invariant sets",
            probe.len()
        );
        return Ok(report);
    }

    let centralizer = MembershipOracle::centralizer(group, i)?;
    report.relative_ends = record(
        failures,
        "relative ends of the centralizer",
        ends::estimate_relative_ends(group, &centralizer, &params.schedule, params.vertex_budget),
    );
    let stabilizer = MembershipOracle::halfspace_stabilizer(group, i)?;
    report.halfspace_relative_ends = record(
        failures,
        "relative ends of the halfspace stabilizer",
        ends::estimate_relative_ends(group, &stabilizer, &params.schedule, params.vertex_budget),
    );
    report.wall_certificate = record(
        failures,
        "wall certificate",
        walls::wall_certificate(group, i, params.wall_radius, params.vertex_budget),
    );
    report.crossings = record(
        failures,
        "crossing obstruction",
        walls::crossing_obstruction(group, i, params.crossing_radius, params.vertex_budget).map(
            |c| CrossingSummary {
                radius: c.radius,
                translates_tested: c.tested.len(),
                crossing: c.crossing_count(),
                first_crossing: c
                    .tested
                    .iter()
                    .find(|w| w.verdict == CrossingVerdict::Crosses)
                    .map(|w| w.g.clone()),
            },
        ),
    );
    report.bounds = match (i, bounds::detect_family(group.system())) {
        (0, Some((n, t))) if t.is_hyperbolic() => {
            record(failures, "family bound", bounds::splitting_report(n, t)).map(|b| BoundComparison::Family(Box::new(b)))
        }
        _ => {
            let lower_bound = bounds::coxeter_betti_lower_bound(group.system());
            Some(BoundComparison::General {
                trivial: !lower_bound.is_positive(),
                lower_bound,
                caveat: bounds::LOWER_BOUND_CAVEAT,
            })
        }
    };
    let profiles = profile_sample(
        group,
        &centralizer,
        params.sample_length,
        params.sample_cap,
        params.vertex_budget,
    )
    .and_then(|sample| {
        check_radii(&params.profile_radii)?;
        let wanted = *params.profile_radii.last().expect("nonempty");
        let (ball, stop) = Ball::build_capped(group, wanted, params.vertex_budget);
        let radii: Vec<usize> =
            params.profile_radii.iter().copied().filter(|&r| r <= ball.radius()).collect();
        if let Some(e) = stop {
            if radii.len() < 2 {
                return Err(e);
            }
            report.warnings.push(format!("profiles truncated to radii {radii:?}: {e}"));
        }
        let members = members_in_ball(group, &centralizer, &ball)?;
        sample
            .par_iter()
            .map(|g| profile_from_members(group, &centralizer, g, &radii, &members))
            .collect::<Result<Vec<_>>>()
    });
    report.profiles = record(failures, "intersection profiles", profiles).unwrap_or_default();

    report.hypotheses = hypotheses(&report);
    let evidence: Vec<&str> = report
        .hypotheses
        .iter()
        .filter(|h| h.status == Status::Evidence)
        .map(|h| h.name)
        .collect();
    let missing: Vec<&str> = report
        .hypotheses
        .iter()
        .filter(|h| h.status != Status::Evidence)
        .map(|h| h.name)
        .collect();
    let list = |names: &[&str]| if names.is_empty() { "none".to_string() } else { names.join(", ") };
    report.summary = format!(
        "hypotheses supported at the computed radii: {}; not certified: {}",
        list(&evidence),
        list(&missing)
    );
    Ok(report)
}

fn ends_status(est: &Option<EndsEstimate>) -> (Status, String) {
    match est {
        None => (Status::Failed, "not computed".into()),
        Some(e) => match e.verdict {
            Verdict::Two | Verdict::Many => {
                (Status::Evidence, format!("{} up to radius {}", e.verdict, e.radius_reached))
            }
            v => (Status::NoEvidence, format!("{v} up to radius {}", e.radius_reached)),
        },
    }
}

fn hypotheses(report: &ReflectionReport) -> Vec<Hypothesis> {
    let mut out = Vec::new();

    let (mut status, detail_c) = ends_status(&report.relative_ends);
    let (status_h, detail_h) = ends_status(&report.halfspace_relative_ends);
    if status_h == Status::Evidence {
        status = Status::Evidence;
    }
    out.push(Hypothesis {
        name: "relative ends at least 2",
        status,
        detail: format!("centralizer: {detail_c}; halfspace stabilizer: {detail_h}"),
    });

    out.push(match &report.wall_certificate {
        None => Hypothesis { name: "wall almost-invariant", status: Status::Failed, detail: "not computed".into() },
        Some(c) if c.passes() => Hypothesis {
            name: "wall almost-invariant",
            status: Status::Evidence,
            detail: format!("certificate passes at radius {}", c.radius),
        },
        Some(c) => Hypothesis {
            name: "wall almost-invariant",
            status: Status::NoEvidence,
            detail: c.failures.join("; "),
        },
    });

    out.push(match &report.bounds {
        Some(BoundComparison::Family(b)) => Hypothesis {
            name: "betti inequality",
            status: if b.inequality_holds { Status::Evidence } else { Status::NoEvidence },
            detail: format!("lower bound {} against {}", b.lower_bound, b.centralizer_value),
        },
        Some(BoundComparison::General { lower_bound, .. }) => Hypothesis {
            name: "betti inequality",
            status: Status::NotApplicable,
            detail: format!(
                "lower bound {lower_bound} for the group; no value for the centralizer"
            ),
        },
        None => Hypothesis { name: "betti inequality", status: Status::Failed, detail: "not computed".into() },
    });

    let growing = report.profiles.iter().filter(|p| p.verdict == ProfileVerdict::Growing).count();
    out.push(Hypothesis {
        name: "almost malnormal",
        status: if report.profiles.is_empty() {
            Status::Failed
        } else if growing == 0 {
            Status::Evidence
        } else {
            Status::NoEvidence
        },
        detail: format!("{growing} of {} sampled intersections still growing", report.profiles.len()),
    });
    out
}

/// One checked example.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteItem {
    pub id: String,
    pub criterion: u32,
    pub description: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub items: Vec<SuiteItem>,
    pub passed: usize,
    pub failed: usize,
}

fn item(
    id: &str,
    criterion: u32,
    description: &str,
    expected: impl ToString,
    observed: impl ToString,
    passed: bool,
) -> SuiteItem {
    SuiteItem {
        id: id.into(),
        criterion,
        description: description.into(),
        expected: expected.to_string(),
        observed: observed.to_string(),
        passed,
    }
}

fn failed_item(id: &str, criterion: u32, description: &str, expected: &str, e: &Error) -> SuiteItem {
    item(id, criterion, description, expected, format!("error: {e}"), false)
}

fn triangle(p: u32, q: u32, r: u32) -> TriangleParams {
    TriangleParams::new(p, q, r).expect("labels are at least 2")
}

/// Radius used for the wall-invariant sweep.
pub const WALL_SWEEP_RADIUS: usize = 5;

/// Items for a single acceptance criterion (1 to 11).
pub fn criterion_items(criterion: u32) -> Vec<SuiteItem> {
    match criterion {
        1 => triangle_items(),
        2 => klein_quartic_items(),
        3 => minimal_n_items(),
        4 => family_items(),
        5 => eight_generator_items(),
        6 => index_threshold_items(),
        7 => finite_oracle_items(),
        8 => ends_items(),
        9 => relative_ends_items(),
        10 => wall_items(),
        11 => crossing_items(),
        _ => Vec::new(),
    }
}

/// Runs the fixed example suite.
pub fn verify_paper_examples() -> SuiteReport {
    let items: Vec<SuiteItem> = (1..=11).flat_map(criterion_items).collect();
    let passed = items.iter().filter(|i| i.passed).count();
    SuiteReport { failed: items.len() - passed, passed, items }
}

fn triangle_items() -> Vec<SuiteItem> {
    let t = triangle(2, 3, 7);
    let beta = bounds::triangle_betti(t);
    let chi = bounds::triangle_euler_char(t);
    let ok = beta.as_ref().is_ok_and(|b| *b == Q::new(1, 84)) && chi == Q::new(-1, 84);
    let observed = match beta {
        Ok(b) => format!("beta = {b}, chi = {chi}"),
        Err(e) => format!("error: {e}"),
    };
    vec![item(
        "triangle-2-3-7",
        1,
        "l2-Betti number and Euler characteristic of T(2,3,7)",
        "beta = 1/84, chi = -1/84",
        observed,
        ok,
    )]
}

fn klein_quartic_items() -> Vec<SuiteItem> {
    let result = (|| -> Result<(Q, Q)> {
        let beta = bounds::triangle_betti(triangle(2, 3, 7))?;
        Ok((bounds::betti_scale_finite_index(&beta, 336)?, bounds::surface_betti(3)?))
    })();
    match result {
        Ok((scaled, surface)) => vec![item(
            "klein-quartic",
            2,
            "index-336 scaling of beta(T(2,3,7)) against the genus-3 surface",
            "336 * 1/84 = 4 = surface_betti(3)",
            format!("{scaled} and {surface}"),
            scaled == Q::from_int(4) && surface == Q::from_int(4),
        )],
        Err(e) => vec![failed_item("klein-quartic", 2, "index-336 scaling", "4", &e)],
    }
}

fn minimal_n_items() -> Vec<SuiteItem> {
    let t = triangle(2, 3, 7);
    let threshold = bounds::sufficient_threshold(t);
    let seven = bounds::sufficient_criterion_holds(7, t);
    let eight = bounds::sufficient_criterion_holds(8, t);
    let minimal = bounds::minimal_sufficient_n(t);
    let observed = match &minimal {
        Ok(n) => format!("minimal n = {n}, n=7 holds: {seven}, n=8 holds: {eight}, 3chi+2 = {threshold}"),
        Err(e) => format!("error: {e}"),
    };
    vec![item(
        "minimal-n-2-3-7",
        3,
        "least n satisfying n - 6 > 3chi + 2 for (2,3,7)",
        "minimal n = 8, n=7 holds: false, n=8 holds: true, 3chi+2 = 55/28",
        observed,
        minimal.is_ok_and(|n| n == 8) && !seven && eight && threshold == Q::new(55, 28),
    )]
}

fn family_items() -> Vec<SuiteItem> {
    let t = triangle(2, 3, 7);
    let mut out = Vec::new();
    match bounds::family_system(8, t).and_then(|sys| {
        Ok((bounds::coxeter_betti_lower_bound(&sys), bounds::centralizer_betti_family(t)?))
    }) {
        Ok((lower, centralizer)) => out.push(item(
            "family-8-2-3-7",
            4,
            "lower bound for W_8 with (2,3,7) against the centralizer value",
            "163/672 > 1/168",
            format!("{lower} vs {centralizer}"),
            lower == Q::new(163, 672) && centralizer == Q::new(1, 168) && lower > centralizer,
        )),
        Err(e) => out.push(failed_item("family-8-2-3-7", 4, "W_8 bound", "163/672", &e)),
    }

    let mut checked = 0;
    let mut mismatches = Vec::new();
    for n in 5..=12 {
        for p in 2..=10 {
            for q in 2..=10 {
                for r in 2..=10 {
                    let t = triangle(p, q, r);
                    match bounds::family_system(n, t) {
                        Ok(sys) => {
                            checked += 1;
                            if bounds::coxeter_betti_lower_bound(&sys) != bounds::family_bound_display(n, t) {
                                mismatches.push(format!("n={n} ({p},{q},{r})"));
                            }
                        }
                        Err(e) => mismatches.push(format!("n={n} ({p},{q},{r}): {e}")),
                    }
                }
            }
        }
    }
    out.push(item(
        "family-closed-form",
        4,
        "general lower bound equals the closed-form family expression, n in 5..12, labels up to 10",
        "0 mismatches",
        format!("{} mismatches in {checked} cases", mismatches.len()),
        mismatches.is_empty(),
    ));
    out
}

fn eight_generator_items() -> Vec<SuiteItem> {
    let sys = presets::eight_generator_example(presets::ABOVE_FIFTY);
    let lower = bounds::coxeter_betti_lower_bound(&sys);
    vec![item(
        "example-1-labels-51",
        5,
        "lower bound for the 8-generator example with remaining labels 51",
        "5/34 > 0",
        &lower,
        lower == Q::new(5, 34) && lower.is_positive(),
    )]
}

fn index_threshold_items() -> Vec<SuiteItem> {
    match bounds::index_threshold(&Q::new(1, 168), &Q::new(163, 672)) {
        Ok(th) => vec![item(
            "index-threshold",
            6,
            "beta(C(s1)) / beta(W_8) for (2,3,7)",
            "4/163 < 1",
            &th,
            th == Q::new(4, 163) && th < Q::one(),
        )],
        Err(e) => vec![failed_item("index-threshold", 6, "index threshold", "4/163", &e)],
    }
}

/// Compares the word-problem solver with a permutation model of the group.
fn check_against_model(model: &finite_oracle::PermutationModel) -> Result<Vec<String>> {
    let group = CoxeterGroup::new(model.system.clone());
    let mut problems = Vec::new();
    let ball = Ball::build(&group, usize::MAX, 10_000)?;
    if !ball.is_saturated() || ball.len() != model.order {
        problems.push(format!("enumerated {} elements, expected {}", ball.len(), model.order));
    }
    let words = model.shortlex_words();
    for el in ball.vertices() {
        let p = model.eval(el.normal_form());
        if words.get(&p).map(Vec::as_slice) != Some(el.normal_form()) {
            problems.push(format!("{el} is not the ShortLex-least word for its permutation"));
        }
    }
    for a in ball.vertices() {
        let pa = model.eval(a.normal_form());
        for b in ball.vertices() {
            let ab = group.multiply(a, b)?;
            let expected = finite_oracle::compose(&pa, &model.eval(b.normal_form()));
            if model.eval(ab.normal_form()) != expected {
                problems.push(format!("{a} * {b} = {ab} disagrees with the permutation product"));
            }
        }
    }
    Ok(problems)
}

fn finite_oracle_items() -> Vec<SuiteItem> {
    finite_oracle::calibration_models()
        .iter()
        .map(|model| {
            let id = format!("finite-{}", model.name.to_lowercase());
            let description = format!("word problem of {} against a permutation model", model.name);
            let expected = format!("order {}, all {} products agree", model.order, model.order * model.order);
            match check_against_model(model) {
                Ok(problems) => item(
                    &id,
                    7,
                    &description,
                    &expected,
                    if problems.is_empty() {
                        expected.clone()
                    } else {
                        format!("{} problems, first: {}", problems.len(), problems[0])
                    },
                    problems.is_empty(),
                ),
                Err(e) => failed_item(&id, 7, &description, &expected, &e),
            }
        })
        .collect()
}

fn counts(est: &EndsEstimate) -> String {
    let c: Vec<String> = est.schedule.iter().map(|p| p.components.to_string()).collect();
    format!("{} (counts {})", est.verdict, c.join(", "))
}

fn stable(est: &EndsEstimate) -> bool {
    match est.schedule.as_slice() {
        [.., a, b] => a.components == b.components || (a.components >= 3 && b.components >= 3),
        _ => est.saturated,
    }
}

fn ends_items() -> Vec<SuiteItem> {
    presets::ends_calibration()
        .into_iter()
        .map(|(name, sys, expected)| {
            let group = CoxeterGroup::new(sys);
            let id = format!("ends-{}", name.to_lowercase());
            let description = format!("ends of {name}");
            match ends::estimate_ends(&group, &ends::default_schedule(), crate::ball::DEFAULT_VERTEX_BUDGET) {
                Ok(est) => item(
                    &id,
                    8,
                    &description,
                    expected.to_string(),
                    counts(&est),
                    est.verdict == expected && stable(&est),
                ),
                Err(e) => failed_item(&id, 8, &description, &expected.to_string(), &e),
            }
        })
        .collect()
}

fn relative_ends_items() -> Vec<SuiteItem> {
    let budget = crate::ball::DEFAULT_VERTEX_BUDGET;
    let schedule = ends::default_schedule();
    let mut out = Vec::new();
    let affine = CoxeterGroup::new(presets::affine_333());

    let oracle = MembershipOracle::Centralizer(0);
    out.push(match ends::estimate_relative_ends(&affine, &oracle, &schedule, budget) {
        Ok(est) => item(
            "relative-ends-affine-centralizer",
            9,
            "relative ends of the affine (3,3,3) group over C(s1)",
            "TWO",
            counts(&est),
            est.verdict == Verdict::Two && stable(&est),
        ),
        Err(e) => failed_item("relative-ends-affine-centralizer", 9, "C(s1)", "TWO", &e),
    });

    let oracle = MembershipOracle::HalfspaceStabilizer(0);
    out.push(match ends::estimate_relative_ends(&affine, &oracle, &schedule, budget) {
        Ok(est) => item(
            "relative-ends-affine-halfspace",
            9,
            "relative ends of the affine (3,3,3) group over the halfspace-preserving part of C(s1)",
            "TWO",
            counts(&est),
            est.verdict == Verdict::Two && stable(&est),
        ),
        Err(e) => failed_item("relative-ends-affine-halfspace", 9, "halfspace stabilizer", "TWO", &e),
    });

    for (name, sys, _) in presets::ends_calibration() {
        let group = CoxeterGroup::new(sys);
        let id = format!("relative-ends-trivial-{}", name.to_lowercase());
        let description = format!("trivial-subgroup relative ends of {name} equal its ends");
        let result = ends::estimate_ends(&group, &schedule, budget).and_then(|abs| {
            let rel = ends::estimate_relative_ends(&group, &MembershipOracle::Trivial, &schedule, budget)?;
            Ok((abs, rel))
        });
        out.push(match result {
            Ok((abs, rel)) => item(
                &id,
                9,
                &description,
                counts(&abs),
                counts(&rel),
                abs.verdict == rel.verdict && abs.schedule == rel.schedule,
            ),
            Err(e) => failed_item(&id, 9, &description, "equal estimates", &e),
        });
    }
    out
}

fn wall_items() -> Vec<SuiteItem> {
    let mut systems: Vec<(&str, _)> = presets::ends_calibration()
        .into_iter()
        .map(|(name, sys, _)| (name, sys))
        .chain(presets::finite_calibration().into_iter().map(|(name, sys, _)| (name, sys)))
        .collect();
    let mut seen = std::collections::HashSet::new();
    systems.retain(|(name, _)| seen.insert(*name));
    systems
        .into_iter()
        .map(|(name, sys)| {
            let group = CoxeterGroup::new(sys);
            let id = format!("walls-{}", name.to_lowercase());
            let description =
                format!("wall census and t-swap on B_{WALL_SWEEP_RADIUS} of {name}, every generator");
            let result = (|| -> Result<(usize, usize, Vec<String>)> {
                let ball = Ball::build(&group, WALL_SWEEP_RADIUS, crate::ball::DEFAULT_VERTEX_BUDGET)?;
                let (mut edges, mut vertices, mut bad) = (0, 0, Vec::new());
                for i in 0..group.rank() {
                    let inv = walls::wall_invariants(&group, &ball, &group.generator(i)?)?;
                    edges += inv.edges_checked;
                    vertices += inv.swap_checked;
                    if !inv.holds() {
                        bad.push(format!(
                            "s{}: {} census mismatches, {} swap failures",
                            i + 1,
                            inv.census_mismatches.len(),
                            inv.swap_failures.len()
                        ));
                    }
                }
                Ok((edges, vertices, bad))
            })();
            match result {
                Ok((edges, vertices, bad)) => item(
                    &id,
                    10,
                    &description,
                    "no mismatches",
                    if bad.is_empty() {
                        format!("{edges} edges and {vertices} vertices checked, no mismatches")
                    } else {
                        bad.join("; ")
                    },
                    bad.is_empty(),
                ),
                Err(e) => failed_item(&id, 10, &description, "no mismatches", &e),
            }
        })
        .collect()
}

fn corner_string(c: &walls::CornerWitnesses) -> String {
    let parts: Vec<String> = c
        .corners
        .iter()
        .map(|w| w.as_ref().map_or("-".to_string(), ToString::to_string))
        .collect();
    format!("{} [{}]", c.verdict, parts.join(" | "))
}

/// Checks that every translate keeps its verdict and its ShortLex-least
/// witnesses when the radius grows from `r` to `r + 1`.
fn persistence(group: &CoxeterGroup, i: usize, radii: std::ops::RangeInclusive<usize>) -> Result<(usize, Vec<String>)> {
    let mut compared = 0;
    let mut bad = Vec::new();
    for r in radii {
        let small = walls::crossing_obstruction(group, i, r, crate::ball::DEFAULT_VERTEX_BUDGET)?;
        let big = walls::crossing_obstruction(group, i, r + 1, crate::ball::DEFAULT_VERTEX_BUDGET)?;
        for c in small.tested.iter().filter(|c| c.verdict == CrossingVerdict::Crosses) {
            compared += 1;
            if big.entry(&c.g) != Some(c) {
                bad.push(format!("{} at R = {r}", c.g));
            }
        }
    }
    Ok((compared, bad))
}

fn crossing_items() -> Vec<SuiteItem> {
    let mut out = Vec::new();
    let square = CoxeterGroup::new(presets::racg_square());
    let radius = 6;
    let ball = match Ball::build(&square, radius, crate::ball::DEFAULT_VERTEX_BUDGET) {
        Ok(b) => b,
        Err(e) => return vec![failed_item("crossing-square", 11, "square ball", "", &e)],
    };
    let s2 = square.generator(1).expect("rank 4");
    match walls::crossing_for_translates(&square, 0, &ball, &[s2, square.identity()]) {
        Ok(report) => {
            let g = &report.tested[0];
            out.push(item(
                "crossing-square-s2",
                11,
                "4-cycle RACG: A+(s1) against s2 A+(s1) in B_6",
                "CROSSES with four witnesses",
                corner_string(g),
                g.verdict == CrossingVerdict::Crosses,
            ));
            let e = &report.tested[1];
            out.push(item(
                "crossing-square-identity",
                11,
                "4-cycle RACG: A+(s1) against itself",
                "NESTED with exactly the corners A and A*",
                corner_string(e),
                e.verdict == CrossingVerdict::NestedAtThisRadius && e.flags() == [true, false, false, true],
            ));
        }
        Err(e) => out.push(failed_item("crossing-square-s2", 11, "square corners", "CROSSES", &e)),
    }

    let pair = Halfspace::of_generator(&square, 0)
        .and_then(|a| Ok((a, Halfspace::of_generator(&square, 1)?)))
        .and_then(|(a, b)| walls::halfspace_corners(&square, &a, &b, &ball));
    out.push(match pair {
        Ok(corners) => item(
            "crossing-square-walls-s1-s2",
            11,
            "4-cycle RACG: A+(s1) against A+(s2), the wall of s2 as a second wall",
            "all four corners nonempty",
            corners
                .iter()
                .map(|w| w.as_ref().map_or("-".to_string(), ToString::to_string))
                .collect::<Vec<_>>()
                .join(" | "),
            corners.iter().all(Option::is_some),
        ),
        Err(e) => failed_item("crossing-square-walls-s1-s2", 11, "two walls", "four corners", &e),
    });

    for (name, sys) in [("square", presets::racg_square()), ("affine-333", presets::affine_333())] {
        let group = CoxeterGroup::new(sys);
        let id = format!("crossing-persistence-{name}");
        let description = format!("{name}: crossing witnesses persist from R to R+1, R in 4..7");
        out.push(match persistence(&group, 0, 4..=7) {
            Ok((compared, bad)) => item(
                &id,
                11,
                &description,
                "every crossing translate keeps its witnesses",
                if bad.is_empty() {
                    format!("{compared} crossing translates compared, all persist")
                } else {
                    format!("{} changed, first {}", bad.len(), bad[0])
                },
                bad.is_empty(),
            ),
            Err(e) => failed_item(&id, 11, &description, "persistence", &e),
        });
    }
    out
}
