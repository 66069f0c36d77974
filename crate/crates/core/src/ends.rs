//! Freudenthal-Hopf ends estimated on finite balls.
//!
//! For each schedule point `(r, R)` the estimator counts the connected
//! components of the annulus `r < d <= R` that reach the sphere of radius
//! `R`. A finitely generated group (or coset graph of a pair) has 0, 1, 2 or
//! infinitely many ends, so two consecutive counts of at least 3 are read as
//! infinitely many.

use std::fmt;

use serde::Serialize;

use crate::ball::{Ball, CosetBall, CosetMatching, LayeredGraph, MembershipOracle};
use crate::error::{Error, Result};
use crate::group::CoxeterGroup;

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Zero,
    One,
    Two,
    /// At least three, hence infinitely many.
    Many,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Zero => "ZERO",
            Verdict::One => "ONE",
            Verdict::Two => "TWO",
            Verdict::Many => "MANY",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
pub struct SchedulePoint {
    pub inner: usize,
    pub outer: usize,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndsEstimate {
    pub schedule: Vec<SchedulePoint>,
    pub verdict: Verdict,
    pub saturated: bool,
    pub radius_reached: usize,
    pub vertices: usize,
    pub warnings: Vec<String>,
}

/// `r = 2, 3, ...` with `R = 2r`, up to `max_inner`.
pub fn doubling_schedule(max_inner: usize) -> Vec<(usize, usize)> {
    (2..=max_inner.max(2)).map(|r| (r, 2 * r)).collect()
}

pub fn default_schedule() -> Vec<(usize, usize)> {
    doubling_schedule(5)
}

/// Components of `{v : inner < d(v) <= outer}` containing a vertex at distance `outer`.
pub fn component_count(graph: &impl LayeredGraph, inner: usize, outer: usize) -> usize {
    let n = graph.vertex_count();
    let in_annulus = |v: usize| {
        let d = graph.distance(v);
        d > inner && d <= outer
    };
    let mut seen = vec![false; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] || !in_annulus(start) {
            continue;
        }
        let mut reaches_sphere = false;
        seen[start] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            reaches_sphere |= graph.distance(v) == outer;
            for s in 0..graph.rank() {
                if let Some(w) = graph.neighbor(v, s) {
                    if !seen[w] && in_annulus(w) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        if reaches_sphere {
            count += 1;
        }
    }
    count
}

fn validate_schedule(schedule: &[(usize, usize)]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidArgument("empty ends schedule".into()));
    }
    for w in schedule.windows(2) {
        if w[1].1 <= w[0].1 || w[1].0 <= w[0].0 {
            return Err(Error::InvalidArgument("schedule radii must increase".into()));
        }
    }
    for &(r, big) in schedule {
        if big < 2 * r {
            return Err(Error::InvalidArgument(format!("schedule point ({r}, {big}) has R < 2r")));
        }
    }
    Ok(())
}

/// Applies the verdict rules to counts already computed on `graph`.
pub fn estimate_on_graph(graph: &impl LayeredGraph, schedule: &[(usize, usize)]) -> EndsEstimate {
    let saturated = graph.is_saturated();
    let mut warnings = Vec::new();
    let mut points = Vec::new();
    for &(inner, outer) in schedule {
        if outer > graph.radius() && !saturated {
            warnings.push(format!(
                "schedule point ({inner}, {outer}) skipped: ball only reaches radius {}",
                graph.radius()
            ));
            continue;
        }
        points.push(SchedulePoint { inner, outer, components: component_count(graph, inner, outer) });
    }

    if !saturated {
        for p in &points {
            let mut prev = p.components;
            for outer in p.outer + 1..=graph.radius() {
                let c = component_count(graph, p.inner, outer);
                if c < prev {
                    warnings.push(format!(
                        "component count at r = {} dropped from {prev} to {c} at R = {outer}",
                        p.inner
                    ));
                    break;
                }
                prev = c;
            }
        }
    }

    let verdict = if saturated {
        Verdict::Zero
    } else {
        match points.as_slice() {
            [.., a, b] if a.components >= 3 && b.components >= 3 => Verdict::Many,
            [.., a, b] if a.components == b.components && a.components == 1 => Verdict::One,
            [.., a, b] if a.components == b.components && a.components == 2 => Verdict::Two,
            _ => Verdict::Inconclusive,
        }
    };
    EndsEstimate {
        schedule: points,
        verdict,
        saturated,
        radius_reached: graph.radius(),
        vertices: graph.vertex_count(),
        warnings,
    }
}

fn finish(
    graph: &impl LayeredGraph,
    schedule: &[(usize, usize)],
    stop: Option<Error>,
) -> Result<EndsEstimate> {
    let first_outer = schedule[0].1;
    match stop {
        Some(e) if graph.radius() < first_outer => Err(e),
        stop => {
            let mut est = estimate_on_graph(graph, schedule);
            if let Some(e) = stop {
                est.warnings.insert(0, format!("ball growth stopped: {e}"));
            }
            Ok(est)
        }
    }
}

/// Ends of the Cayley graph of `group`.
pub fn estimate_ends(
    group: &CoxeterGroup,
    schedule: &[(usize, usize)],
    vertex_budget: usize,
) -> Result<EndsEstimate> {
    validate_schedule(schedule)?;
    let max = schedule.last().expect("nonempty").1;
    let (ball, stop) = Ball::build_capped(group, max, vertex_budget);
    finish(&ball, schedule, stop)
}

/// Ends of the coset graph `H \ Cay(W)`, i.e. the relative ends `e(W, H)`.
pub fn estimate_relative_ends(
    group: &CoxeterGroup,
    oracle: &MembershipOracle,
    schedule: &[(usize, usize)],
    vertex_budget: usize,
) -> Result<EndsEstimate> {
    validate_schedule(schedule)?;
    let max = schedule.last().expect("nonempty").1;
    let (ball, stop) =
        CosetBall::build_capped(group, oracle, max, vertex_budget, CosetMatching::Auto);
    let mut est = finish(&ball, schedule, stop)?;
    if oracle.is_finite_nontrivial() {
        est.warnings.push(format!(
            "{} is finite: the coset-graph count can differ from the ends of the group",
            oracle.descriptor()
        ));
    }
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn schedules() {
        assert_eq!(default_schedule(), vec![(2, 4), (3, 6), (4, 8), (5, 10)]);
        assert!(validate_schedule(&[]).is_err());
        assert!(validate_schedule(&[(2, 3)]).is_err());
        assert!(validate_schedule(&[(3, 6), (2, 8)]).is_err());
        assert!(validate_schedule(&[(2, 5), (3, 7)]).is_ok());
    }

    #[test]
    fn two_ended_and_finite() {
        let d = CoxeterGroup::new(presets::d_infinity());
        let est = estimate_ends(&d, &default_schedule(), 1000).unwrap();
        assert_eq!(est.verdict, Verdict::Two);
        assert!(est.schedule.iter().all(|p| p.components == 2));

        let a2 = CoxeterGroup::new(presets::a2());
        let est = estimate_ends(&a2, &default_schedule(), 1000).unwrap();
        assert_eq!(est.verdict, Verdict::Zero);
        assert!(est.saturated);
    }

    #[test]
    fn finite_subgroup_gives_a_ray_and_a_warning() {
        let d = CoxeterGroup::new(presets::d_infinity());
        let h = MembershipOracle::finite_subgroup(&d, &[d.generator(0).unwrap()], 4).unwrap();
        let est = estimate_relative_ends(&d, &h, &default_schedule(), 1000).unwrap();
        assert_eq!(est.verdict, Verdict::One);
        assert_eq!(est.warnings.len(), 1);
    }

    #[test]
    fn unreachable_first_point_is_an_error() {
        let g = CoxeterGroup::new(presets::free_product_3());
        let err = estimate_ends(&g, &default_schedule(), 20).unwrap_err();
        assert!(err.is_resource_limit());
        // Later points may be skipped instead.
        let est = estimate_ends(&g, &default_schedule(), 100).unwrap();
        assert_eq!(est.verdict, Verdict::Inconclusive);
        assert!(est.warnings.iter().any(|w| w.contains("skipped")));
    }

    #[test]
    fn verdict_names() {
        assert_eq!(Verdict::Many.to_string(), "MANY");
        assert_eq!(serde_json::to_string(&Verdict::Inconclusive).unwrap(), "\"INCONCLUSIVE\"");
    }
}
