//! Reflection walls, their halfspaces, and the four-corner crossing test.
//!
//! For a reflection `t`, the wall of `t` is the set of Cayley-graph edges
//! `{w, ws}` with `w s w^-1 = t`. The halfspace `A+` is the side containing
//! the identity: `w` lies in `A+` iff `l(tw) > l(w)`. Translates are taken on
//! the left, `v in gA` iff `g^-1 v in A`.

use std::ops::Neg;

use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{Ball, LayeredGraph};
use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, Element};

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Whether `w` lies on the identity side of the wall of `t`.
pub fn reflection_side(group: &CoxeterGroup, t: &Element, w: &Element) -> Result<bool> {
    Ok(group.multiply(t, w)?.length() > w.length())
}

/// Whether `w` lies on the identity side of the wall of the generator `s_i`.
pub fn identity_side(group: &CoxeterGroup, i: usize, w: &Element) -> Result<bool> {
    Ok(!group.is_left_descent(i, w)?)
}

/// True iff `t` is conjugate to a generator.
///
/// A reflection `t` other than `s` with left descent `s` has `l(sts) = l(t) - 2`,
/// so peeling the first letter of the normal form off both ends must reach a
/// generator.
pub fn is_reflection(group: &CoxeterGroup, t: &Element) -> Result<bool> {
    let mut t = t.clone();
    while t.length() > 1 {
        let s = t.normal_form()[0] as usize;
        let next = group.right_mul(&group.left_mul(s, &t)?, s)?;
        if next.length() + 2 != t.length() {
            return Ok(false);
        }
        t = next;
    }
    Ok(t.length() == 1)
}

/// One side of the wall of a reflection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Halfspace {
    pub reflection: Element,
    pub side: Sign,
}

impl Halfspace {
    /// `A+` for the reflection `t`.
    pub fn new(group: &CoxeterGroup, t: Element) -> Result<Self> {
        if !is_reflection(group, &t)? {
            return Err(Error::InvalidArgument(format!("{t} is not a reflection")));
        }
        Ok(Halfspace { reflection: t, side: Sign::Plus })
    }

    pub fn of_generator(group: &CoxeterGroup, i: usize) -> Result<Self> {
        Ok(Halfspace { reflection: group.generator(i)?, side: Sign::Plus })
    }

    pub fn complement(&self) -> Self {
        Halfspace { reflection: self.reflection.clone(), side: -self.side }
    }

    pub fn contains(&self, group: &CoxeterGroup, w: &Element) -> Result<bool> {
        Ok(halfspace_membership(group, self, w)? == Sign::Plus)
    }
}

/// `+` if `w` lies in `h`, `-` if it lies in the complement.
pub fn halfspace_membership(group: &CoxeterGroup, h: &Halfspace, w: &Element) -> Result<Sign> {
    let plus = reflection_side(group, &h.reflection, w)?;
    let sign = if plus { Sign::Plus } else { Sign::Minus };
    Ok(match h.side {
        Sign::Plus => sign,
        Sign::Minus => -sign,
    })
}

/// A ball edge `{vertex, vertex * generator}` given by ball indices.
#[derive(Debug, Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BallEdge {
    pub from: usize,
    #[serde(serialize_with = "crate::system::serialize_one_based")]
    pub generator: usize,
    pub to: usize,
}

/// Edges `{w, ws}` of the ball with `w s w^-1 = t`.
pub fn wall_edges(group: &CoxeterGroup, ball: &Ball, t: &Element) -> Result<Vec<BallEdge>> {
    let mut out = Vec::new();
    for (v, s, w) in ball.edges() {
        let conj = group.conjugate_reflection(ball.vertex(v), s)?;
        if &conj == t {
            out.push(BallEdge { from: v, generator: s, to: w });
        }
    }
    Ok(out)
}

/// Edges of the ball whose endpoints lie on opposite sides of the wall of `t`.
pub fn sign_flip_edges(group: &CoxeterGroup, ball: &Ball, t: &Element) -> Result<Vec<BallEdge>> {
    let signs = ball
        .vertices()
        .iter()
        .map(|v| reflection_side(group, t, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(ball
        .edges()
        .filter(|&(v, _, w)| signs[v] != signs[w])
        .map(|(from, generator, to)| BallEdge { from, generator, to })
        .collect())
}

/// Edge-by-edge comparison of the two wall characterizations plus the
/// left `t`-swap identity on every ball vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallInvariants {
    pub reflection: Element,
    pub edges_checked: usize,
    pub wall_edges: usize,
    pub census_mismatches: Vec<BallEdge>,
    pub swap_checked: usize,
    pub swap_failures: Vec<Element>,
}

impl WallInvariants {
    pub fn holds(&self) -> bool {
        self.census_mismatches.is_empty() && self.swap_failures.is_empty()
    }
}

pub fn wall_invariants(group: &CoxeterGroup, ball: &Ball, t: &Element) -> Result<WallInvariants> {
    let by_conjugation = wall_edges(group, ball, t)?;
    let by_sign = sign_flip_edges(group, ball, t)?;
    let census_mismatches: Vec<BallEdge> = by_conjugation
        .iter()
        .filter(|e| !by_sign.contains(e))
        .chain(by_sign.iter().filter(|e| !by_conjugation.contains(e)))
        .copied()
        .collect();
    let h = Halfspace { reflection: t.clone(), side: Sign::Plus };
    let mut swap_failures = Vec::new();
    for w in ball.vertices() {
        let tw = group.multiply(t, w)?;
        if halfspace_membership(group, &h, &tw)? != -halfspace_membership(group, &h, w)? {
            swap_failures.push(w.clone());
        }
    }
    Ok(WallInvariants {
        reflection: t.clone(),
        edges_checked: ball.edges().count(),
        wall_edges: by_conjugation.len(),
        census_mismatches,
        swap_checked: ball.len(),
        swap_failures,
    })
}

/// Ball-restricted evidence that the halfspace of `s_i` is a proper
/// almost-invariant set for the wall stabilizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallCertificate {
    #[serde(serialize_with = "crate::system::serialize_one_based")]
    pub generator: usize,
    pub radius: usize,
    pub ball_size: usize,
    pub wall_edges: usize,
    /// Largest distance from the wall reached inside the ball, per side.
    pub deepest_plus: usize,
    pub deepest_minus: usize,
    /// (a) both sides reach distance at least `radius - 1` from the wall.
    pub deep_halfspaces: bool,
    /// (b) `A+ Δ A+s` inside `B_{R-1}` is exactly the set of wall endpoints across `s`.
    pub boundary_matches_wall: bool,
    /// (c) `C(t) ∩ B_{R/2}` maps wall edges to wall edges.
    pub centralizer_preserves_wall: bool,
    pub centralizer_elements: usize,
    pub translated_edges_checked: usize,
    pub failures: Vec<String>,
}

impl WallCertificate {
    pub fn passes(&self) -> bool {
        self.deep_halfspaces && self.boundary_matches_wall && self.centralizer_preserves_wall
    }
}

pub fn wall_certificate(
    group: &CoxeterGroup,
    i: usize,
    radius: usize,
    vertex_budget: usize,
) -> Result<WallCertificate> {
    group.system().check_gen(i)?;
    if radius < 2 {
        return Err(Error::InvalidArgument("wall certificate needs radius >= 2".into()));
    }
    let ball = Ball::build(group, radius, vertex_budget)?;
    let t = group.generator(i)?;
    let edges = wall_edges(group, &ball, &t)?;
    let plus: Vec<bool> = ball
        .vertices()
        .par_iter()
        .map(|v| identity_side(group, i, v))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();

    // (a)
    let mut endpoints: Vec<&Element> = edges
        .iter()
        .flat_map(|e| [ball.vertex(e.from), ball.vertex(e.to)])
        .collect();
    endpoints.sort();
    endpoints.dedup();
    let depths: Vec<usize> = ball
        .vertices()
        .par_iter()
        .map(|v| -> Result<usize> {
            let v_inv = group.inverse(v)?;
            let mut best = usize::MAX;
            for e in &endpoints {
                best = best.min(group.multiply(&v_inv, e)?.length());
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let deepest = |side: bool| {
        (0..ball.len())
            .filter(|&v| plus[v] == side)
            .map(|v| depths[v])
            .max()
            .unwrap_or(0)
    };
    let (deepest_plus, deepest_minus) = (deepest(true), deepest(false));
    let deep_halfspaces = deepest_plus >= radius - 1 && deepest_minus >= radius - 1;
    if !deep_halfspaces {
        failures.push(format!(
            "(a) deepest vertices at distance {deepest_plus} (+) and {deepest_minus} (-), need {}",
            radius - 1
        ));
    }

    // (b)
    let mut boundary_matches_wall = true;
    for s in 0..group.rank() {
        for v in ball.within(radius - 1) {
            let w = ball.neighbor(v, s).expect("B_{R-1} neighbours lie in B_R");
            let flips = plus[v] != plus[w];
            let on_wall = edges
                .iter()
                .any(|e| e.generator == s && (e.from == v || e.to == v));
            if flips != on_wall {
                boundary_matches_wall = false;
                failures.push(format!("(b) vertex {} across s{}", ball.vertex(v), s + 1));
            }
        }
    }

    // (c)
    let mut centralizer_elements = 0;
    let mut translated_edges_checked = 0;
    let mut centralizer_preserves_wall = true;
    for h in ball.within(radius / 2).map(|v| ball.vertex(v)) {
        if !group.is_in_centralizer(h, i)? {
            continue;
        }
        centralizer_elements += 1;
        for e in &edges {
            let hw = group.multiply(h, ball.vertex(e.from))?;
            let hws = group.right_mul(&hw, e.generator)?;
            if hw.length() > radius || hws.length() > radius {
                continue;
            }
            translated_edges_checked += 1;
            if group.conjugate_reflection(&hw, e.generator)? != t {
                centralizer_preserves_wall = false;
                failures.push(format!("(c) {h} moves edge at {} off the wall", ball.vertex(e.from)));
            }
        }
    }

    Ok(WallCertificate {
        generator: i,
        radius,
        ball_size: ball.len(),
        wall_edges: edges.len(),
        deepest_plus,
        deepest_minus,
        deep_halfspaces,
        boundary_matches_wall,
        centralizer_preserves_wall,
        centralizer_elements,
        translated_edges_checked,
        failures,
    })
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CrossingVerdict {
    Crosses,
    NestedAtThisRadius,
}

impl std::fmt::Display for CrossingVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CrossingVerdict::Crosses => "CROSSES",
            CrossingVerdict::NestedAtThisRadius => "NESTED-AT-THIS-RADIUS",
        })
    }
}

/// The four corners `A∩gA, A∩gA*, A*∩gA, A*∩gA*` for one translate, each
/// with its ShortLex-least witness in the ball when nonempty there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CornerWitnesses {
    pub g: Element,
    pub corners: [Option<Element>; 4],
    pub verdict: CrossingVerdict,
}

impl CornerWitnesses {
    pub fn flags(&self) -> [bool; 4] {
        self.corners.each_ref().map(Option::is_some)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingReport {
    pub reflection: Element,
    pub radius: usize,
    pub tested: Vec<CornerWitnesses>,
}

impl CrossingReport {
    pub fn crossing_count(&self) -> usize {
        self.tested.iter().filter(|c| c.verdict == CrossingVerdict::Crosses).count()
    }

    pub fn entry(&self, g: &Element) -> Option<&CornerWitnesses> {
        self.tested.iter().find(|c| &c.g == g)
    }
}

fn corners_for(
    group: &CoxeterGroup,
    i: usize,
    ball: &Ball,
    in_a: &[bool],
    parents: &[Option<(usize, usize)>],
    g: &Element,
) -> Result<CornerWitnesses> {
    // `g^-1 v`, filled in ShortLex order from the parent of each vertex.
    let mut shifted: Vec<Element> = Vec::with_capacity(ball.len());
    let mut corners: [Option<Element>; 4] = Default::default();
    for (v, el) in ball.vertices().iter().enumerate() {
        let x = match parents[v] {
            None => group.inverse(g)?,
            Some((p, s)) => group.right_mul(&shifted[p], s)?,
        };
        let in_ga = identity_side(group, i, &x)?;
        shifted.push(x);
        let slot = match (in_a[v], in_ga) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        corners[slot].get_or_insert_with(|| el.clone());
        if corners.iter().all(Option::is_some) {
            break;
        }
    }
    let verdict = if corners.iter().all(Option::is_some) {
        CrossingVerdict::Crosses
    } else {
        CrossingVerdict::NestedAtThisRadius
    };
    Ok(CornerWitnesses { g: g.clone(), corners, verdict })
}

/// Corner test of `A = A+(s_i)` against `gA` for every `g` in `B_R`, with
/// witnesses drawn from `B_R`.
pub fn crossing_obstruction(
    group: &CoxeterGroup,
    i: usize,
    radius: usize,
    vertex_budget: usize,
) -> Result<CrossingReport> {
    let ball = Ball::build(group, radius, vertex_budget)?;
    let translates: Vec<Element> = ball.vertices().to_vec();
    crossing_for_translates(group, i, &ball, &translates)
}

/// Corner test for the given translates only, witnesses from `ball`.
pub fn crossing_for_translates(
    group: &CoxeterGroup,
    i: usize,
    ball: &Ball,
    translates: &[Element],
) -> Result<CrossingReport> {
    group.system().check_gen(i)?;
    let in_a: Vec<bool> = ball
        .vertices()
        .par_iter()
        .map(|v| identity_side(group, i, v))
        .collect::<Result<_>>()?;
    let parents: Vec<Option<(usize, usize)>> = (0..ball.len()).map(|v| ball.parent(v)).collect();
    let tested = translates
        .par_iter()
        .map(|g| corners_for(group, i, ball, &in_a, &parents, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(CrossingReport { reflection: group.generator(i)?, radius: ball.radius(), tested })
}

/// Corner test between two arbitrary halfspaces over the vertices of `ball`.
pub fn halfspace_corners(
    group: &CoxeterGroup,
    a: &Halfspace,
    b: &Halfspace,
    ball: &Ball,
) -> Result<[Option<Element>; 4]> {
    let mut corners: [Option<Element>; 4] = Default::default();
    for el in ball.vertices() {
        let slot = match (a.contains(group, el)?, b.contains(group, el)?) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        corners[slot].get_or_insert_with(|| el.clone());
    }
    Ok(corners)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn el(group: &CoxeterGroup, one_based: &[usize]) -> Element {
        let w = crate::group::Word::from_one_based(one_based).unwrap();
        group.reduce_word(&w).unwrap()
    }

    #[test]
    fn identity_and_reflection_sides() {
        let g = CoxeterGroup::new(presets::d_infinity());
        let h = Halfspace::of_generator(&g, 0).unwrap();
        assert_eq!(halfspace_membership(&g, &h, &g.identity()).unwrap(), Sign::Plus);
        let t = g.generator(0).unwrap();
        assert_eq!(halfspace_membership(&g, &h, &t).unwrap(), Sign::Minus);
        assert_eq!(halfspace_membership(&g, &h, &el(&g, &[2])).unwrap(), Sign::Plus);
        assert_eq!(halfspace_membership(&g, &h, &el(&g, &[1, 2])).unwrap(), Sign::Minus);
        assert_eq!(halfspace_membership(&g, &h.complement(), &t).unwrap(), Sign::Plus);
    }

    #[test]
    fn reflections_are_recognized() {
        let g = CoxeterGroup::new(presets::affine_333());
        assert!(is_reflection(&g, &el(&g, &[2, 1, 2])).unwrap());
        assert!(!is_reflection(&g, &el(&g, &[1, 2])).unwrap());
        let commuting = CoxeterGroup::new(presets::a1_cubed());
        // s1 s2 s3 is an involution of odd length but not a reflection.
        assert!(!is_reflection(&commuting, &el(&commuting, &[1, 2, 3])).unwrap());
        assert!(Halfspace::new(&commuting, el(&commuting, &[1, 2, 3])).is_err());
    }

    #[test]
    fn d_infinity_has_one_wall_edge() {
        let g = CoxeterGroup::new(presets::d_infinity());
        let ball = Ball::build(&g, 4, 1000).unwrap();
        let t = g.generator(0).unwrap();
        let edges = wall_edges(&g, &ball, &t).unwrap();
        assert_eq!(edges, vec![BallEdge { from: 0, generator: 0, to: 1 }]);
        let empty = Ball::build(&g, 0, 1000).unwrap();
        assert!(wall_edges(&g, &empty, &t).unwrap().is_empty());
    }

    #[test]
    fn a2_wall_census_agrees() {
        let g = CoxeterGroup::new(presets::a2());
        let ball = Ball::build(&g, 10, 1000).unwrap();
        for t in [el(&g, &[1]), el(&g, &[2]), el(&g, &[1, 2, 1])] {
            let inv = wall_invariants(&g, &ball, &t).unwrap();
            assert!(inv.holds(), "{inv:?}");
            // The hexagon is cut by each of its three walls in two edges.
            assert_eq!(inv.wall_edges, 2);
        }
    }

    #[test]
    fn finite_group_has_no_deep_halfspaces() {
        let g = CoxeterGroup::new(presets::a2());
        let cert = wall_certificate(&g, 0, 3, 1000).unwrap();
        assert!(!cert.deep_halfspaces);
        assert!(cert.boundary_matches_wall && cert.centralizer_preserves_wall);
    }

    #[test]
    fn identity_translate_is_nested() {
        let g = CoxeterGroup::new(presets::affine_333());
        let ball = Ball::build(&g, 3, 1000).unwrap();
        let report = crossing_for_translates(&g, 0, &ball, &[g.identity()]).unwrap();
        let entry = &report.tested[0];
        assert_eq!(entry.flags(), [true, false, false, true]);
        assert_eq!(entry.verdict, CrossingVerdict::NestedAtThisRadius);
    }
}
