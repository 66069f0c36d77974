//! Breadth-first balls in Cayley graphs and in coset graphs `H \ Cay(W)`.
//!
//! Cosets are left cosets `Hg`; edges are right multiplication by generators,
//! `Hg -- Hgs`. Edges that leave a ball are kept and marked outside, so that
//! boundary analysis can tell "not explored" from "absent".

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::ops::Range;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, Element};

pub const DEFAULT_VERTEX_BUDGET: usize = 500_000;

const OUTSIDE: u32 = u32::MAX;

/// The part of a vertex-labelled, generator-coloured graph that the ends
/// estimator and the wall code need.
pub trait LayeredGraph {
    fn rank(&self) -> usize;
    fn radius(&self) -> usize;
    fn vertex_count(&self) -> usize;
    /// Graph distance from the base vertex 0.
    fn distance(&self, v: usize) -> usize;
    /// Neighbour across generator `s`, `None` when it lies outside the ball.
    fn neighbor(&self, v: usize, s: usize) -> Option<usize>;

    /// True iff no edge leaves the ball, i.e. the whole graph is enumerated.
    fn is_saturated(&self) -> bool {
        (0..self.vertex_count()).all(|v| (0..self.rank()).all(|s| self.neighbor(v, s).is_some()))
    }

    /// Vertices at exactly distance `d`.
    fn sphere(&self, d: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.distance(v) == d).collect()
    }
}

/// Cayley-graph ball: all elements of length at most `radius`, in ShortLex order.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    rank: usize,
    vertices: Vec<Element>,
    adjacency: Vec<u32>,
    index: HashMap<Element, usize>,
}

impl Ball {
    /// Builds the ball of radius `radius`, failing if it would exceed `vertex_budget`.
    pub fn build(group: &CoxeterGroup, radius: usize, vertex_budget: usize) -> Result<Ball> {
        match Self::build_capped(group, radius, vertex_budget) {
            (ball, None) => Ok(ball),
            (_, Some(e)) => Err(e),
        }
    }

    /// Builds as many complete layers as the budgets allow, up to `radius`.
    /// Returns the largest complete ball together with the error that stopped
    /// growth, if any.
    pub fn build_capped(
        group: &CoxeterGroup,
        radius: usize,
        vertex_budget: usize,
    ) -> (Ball, Option<Error>) {
        let rank = group.rank();
        let mut vertices = vec![group.identity()];
        let mut index = HashMap::from([(group.identity(), 0usize)]);
        let mut layer = 0..1;
        let mut reached = 0;
        let mut stop = None;

        while reached < radius {
            let next = match next_length_layer(group, &vertices[layer.clone()], reached) {
                Ok(next) => next,
                Err(e) => {
                    stop = Some(e);
                    break;
                }
            };
            if vertices.len() + next.len() > vertex_budget {
                stop = Some(Error::VertexBudget { limit: vertex_budget, radius: reached + 1 });
                break;
            }
            let start = vertices.len();
            for v in next {
                index.insert(v.clone(), vertices.len());
                vertices.push(v);
            }
            layer = start..vertices.len();
            reached += 1;
            if layer.is_empty() {
                // Finite group, fully enumerated.
                break;
            }
        }

        let mut adjacency = vec![OUTSIDE; vertices.len() * rank];
        for (v, el) in vertices.iter().enumerate() {
            for s in 0..rank {
                match group.right_mul(el, s) {
                    Ok(u) => {
                        if let Some(&w) = index.get(&u) {
                            adjacency[v * rank + s] = w as u32;
                        }
                    }
                    Err(e) => {
                        stop.get_or_insert(e);
                    }
                }
            }
        }
        let radius = if stop.is_some() { reached } else { radius };
        (Ball { radius, rank, vertices, adjacency, index }, stop)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Element {
        &self.vertices[v]
    }

    pub fn index_of(&self, el: &Element) -> Option<usize> {
        self.index.get(el).copied()
    }

    /// Vertex indices of all elements of length at most `r`.
    pub fn within(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).take_while(move |&v| self.vertices[v].length() <= r)
    }

    /// A neighbour one step closer to the identity and the generator
    /// leading from it to `v`; `None` for the identity.
    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        let d = self.vertices[v].length();
        (0..self.rank).find_map(|s| {
            self.neighbor(v, s).filter(|&p| self.vertices[p].length() + 1 == d).map(|p| (p, s))
        })
    }

    /// Undirected in-ball edges `(v, s, w)` with `v < w`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.vertices.len()).flat_map(move |v| {
            (0..self.rank).filter_map(move |s| match self.neighbor(v, s) {
                Some(w) if v < w => Some((v, s, w)),
                _ => None,
            })
        })
    }

    /// Line-oriented dump: a vertex table `v length normal_form` followed by
    /// edges `v generator w` (1-based generator, `outside` for boundary edges).
    pub fn dump(&self) -> String {
        let mut out = String::from("# vertices: v_index length normal_form\n");
        for (v, el) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "{v} {} {el}", el.length());
        }
        out.push_str(&dump_edges(self));
        out
    }
}

impl LayeredGraph for Ball {
    fn rank(&self) -> usize {
        self.rank
    }

    fn radius(&self) -> usize {
        self.radius
    }

    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn distance(&self, v: usize) -> usize {
        self.vertices[v].length()
    }

    fn neighbor(&self, v: usize, s: usize) -> Option<usize> {
        let w = self.adjacency[v * self.rank + s];
        (w != OUTSIDE).then_some(w as usize)
    }
}

fn next_length_layer(group: &CoxeterGroup, layer: &[Element], length: usize) -> Result<Vec<Element>> {
    let mut next = Vec::new();
    for v in layer {
        for s in 0..group.rank() {
            let u = group.right_mul(v, s)?;
            if u.length() == length + 1 {
                next.push(u);
            }
        }
    }
    next.sort();
    next.dedup();
    Ok(next)
}

fn dump_edges(g: &impl LayeredGraph) -> String {
    let mut out = String::from("# edges: v_index generator w_index\n");
    for v in 0..g.vertex_count() {
        for s in 0..g.rank() {
            match g.neighbor(v, s) {
                Some(w) if v <= w => {
                    let _ = writeln!(out, "{v} {} {w}", s + 1);
                }
                None => {
                    let _ = writeln!(out, "{v} {} outside", s + 1);
                }
                _ => {}
            }
        }
    }
    out
}

/// Key such that `Hg = Hg'` iff the keys of `g` and `g'` agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetKey(Element, bool);

type Predicate = dyn Fn(&CoxeterGroup, &Element) -> Result<bool> + Send + Sync;

/// A subgroup `H` given by a membership test.
#[derive(Clone)]
pub enum MembershipOracle {
    /// `{1}`.
    Trivial,
    /// The whole group.
    Whole,
    /// Centralizer `C(s_i)` of a generator, i.e. the stabilizer of its wall.
    Centralizer(usize),
    /// Elements of `C(s_i)` that also keep each side of the wall of `s_i`.
    HalfspaceStabilizer(usize),
    /// An explicitly listed finite subgroup.
    Finite(Vec<Element>),
    /// Arbitrary predicate; coset equality falls back to pairwise probing.
    Custom { descriptor: String, predicate: Arc<Predicate> },
}

impl fmt::Debug for MembershipOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl MembershipOracle {
    pub fn centralizer(group: &CoxeterGroup, i: usize) -> Result<Self> {
        group.system().check_gen(i)?;
        Ok(MembershipOracle::Centralizer(i))
    }

    pub fn halfspace_stabilizer(group: &CoxeterGroup, i: usize) -> Result<Self> {
        group.system().check_gen(i)?;
        Ok(MembershipOracle::HalfspaceStabilizer(i))
    }

    pub fn custom(
        descriptor: impl Into<String>,
        predicate: impl Fn(&CoxeterGroup, &Element) -> Result<bool> + Send + Sync + 'static,
    ) -> Self {
        MembershipOracle::Custom { descriptor: descriptor.into(), predicate: Arc::new(predicate) }
    }

    /// The subgroup generated by `generators`, which must be finite with at
    /// most `cap` elements.
    pub fn finite_subgroup(group: &CoxeterGroup, generators: &[Element], cap: usize) -> Result<Self> {
        let mut elements = vec![group.identity()];
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = group.multiply(&x, g)?;
                if !elements.contains(&y) {
                    if elements.len() >= cap {
                        return Err(Error::InvalidArgument(format!(
                            "generated subgroup has more than {cap} elements"
                        )));
                    }
                    elements.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        elements.sort();
        Ok(MembershipOracle::Finite(elements))
    }

    pub fn descriptor(&self) -> String {
        match self {
            MembershipOracle::Trivial => "trivial subgroup".into(),
            MembershipOracle::Whole => "whole group".into(),
            MembershipOracle::Centralizer(i) => format!("centralizer of s{}", i + 1),
            MembershipOracle::HalfspaceStabilizer(i) => {
                format!("halfspace-preserving subgroup of the centralizer of s{}", i + 1)
            }
            MembershipOracle::Finite(els) => {
                let list: Vec<String> = els.iter().map(|e| e.to_string()).collect();
                format!("finite subgroup {{{}}}", list.join("; "))
            }
            MembershipOracle::Custom { descriptor, .. } => descriptor.clone(),
        }
    }

    /// Whether the oracle describes a finite, nontrivial subgroup.
    pub fn is_finite_nontrivial(&self) -> bool {
        matches!(self, MembershipOracle::Finite(els) if els.len() > 1)
    }

    pub fn contains(&self, group: &CoxeterGroup, g: &Element) -> Result<bool> {
        match self {
            MembershipOracle::Trivial => Ok(g.is_identity()),
            MembershipOracle::Whole => Ok(true),
            MembershipOracle::Centralizer(i) => group.is_in_centralizer(g, *i),
            MembershipOracle::HalfspaceStabilizer(i) => {
                Ok(group.is_in_centralizer(g, *i)? && crate::walls::identity_side(group, *i, g)?)
            }
            MembershipOracle::Finite(els) => Ok(els.contains(g)),
            MembershipOracle::Custom { predicate, .. } => predicate(group, g),
        }
    }

    /// Canonical label of the coset `Hg`, when one is known.
    ///
    /// For `C(t)`, `Hg = Hg'` iff `g^-1 t g = g'^-1 t g'`; for the halfspace
    /// stabilizer the side of the translated wall containing `g^-1` is added.
    pub fn coset_key(&self, group: &CoxeterGroup, g: &Element) -> Result<Option<CosetKey>> {
        Ok(Some(match self {
            MembershipOracle::Trivial => CosetKey(g.clone(), false),
            MembershipOracle::Whole => CosetKey(group.identity(), false),
            MembershipOracle::Centralizer(i) => {
                let t = group.generator(*i)?;
                CosetKey(group.conjugate_by(&t, g)?, false)
            }
            MembershipOracle::HalfspaceStabilizer(i) => {
                let t = group.generator(*i)?;
                let side = crate::walls::identity_side(group, *i, g)?;
                CosetKey(group.conjugate_by(&t, g)?, side)
            }
            MembershipOracle::Finite(els) => {
                let mut best: Option<Element> = None;
                for h in els {
                    let hg = group.multiply(h, g)?;
                    if best.as_ref().is_none_or(|b| hg < *b) {
                        best = Some(hg);
                    }
                }
                CosetKey(best.expect("subgroup contains the identity"), false)
            }
            MembershipOracle::Custom { .. } => return Ok(None),
        }))
    }

    /// Key of `Hgs` from the key of `Hg`. For centralizers this is a
    /// conjugation of the key by `s` instead of a full conjugation by `gs`.
    fn next_key(
        &self,
        group: &CoxeterGroup,
        key: &CosetKey,
        s: usize,
        gs: &Element,
    ) -> Result<Option<CosetKey>> {
        match self {
            MembershipOracle::Centralizer(_) => {
                let t = group.left_mul(s, &group.right_mul(&key.0, s)?)?;
                Ok(Some(CosetKey(t, false)))
            }
            MembershipOracle::HalfspaceStabilizer(i) => {
                let t = group.left_mul(s, &group.right_mul(&key.0, s)?)?;
                Ok(Some(CosetKey(t, crate::walls::identity_side(group, *i, gs)?)))
            }
            _ => self.coset_key(group, gs),
        }
    }

    /// `Hg' = Hg`, decided by the membership test `g' g^-1 in H`.
    pub fn same_coset(&self, group: &CoxeterGroup, g1: &Element, g2: &Element) -> Result<bool> {
        let inv = group.inverse(g2)?;
        self.contains(group, &group.multiply(g1, &inv)?)
    }
}

/// How coset equality is decided while building a [`CosetBall`].
#[derive(Debug, Copy, Clone, PartialEq, Eq, Default)]
pub enum CosetMatching {
    /// Canonical keys when the oracle provides them, else probing.
    #[default]
    Auto,
    /// Always probe representatives in the adjacent BFS layers.
    Probe,
}

/// Ball of radius `radius` around `H` in the coset graph `H \ Cay(W)`.
#[derive(Debug, Clone)]
pub struct CosetBall {
    radius: usize,
    rank: usize,
    descriptor: String,
    representatives: Vec<Element>,
    distances: Vec<u32>,
    adjacency: Vec<u32>,
}

struct Pending {
    vertex: usize,
    generator: usize,
    candidate: Element,
    key: Option<CosetKey>,
}

struct CosetBuilder<'a> {
    group: &'a CoxeterGroup,
    oracle: &'a MembershipOracle,
    matching: CosetMatching,
    reps: Vec<Element>,
    distances: Vec<u32>,
    layers: Vec<Range<usize>>,
    rep_keys: Vec<Option<CosetKey>>,
    keys: HashMap<CosetKey, usize>,
    adjacency: Vec<u32>,
}

impl CosetBuilder<'_> {
    fn key(&self, g: &Element) -> Result<Option<CosetKey>> {
        match self.matching {
            CosetMatching::Auto => self.oracle.coset_key(self.group, g),
            CosetMatching::Probe => Ok(None),
        }
    }

    fn candidate(&self, v: usize, s: usize) -> Result<(Element, Option<CosetKey>)> {
        let candidate = self.group.right_mul(&self.reps[v], s)?;
        let key = match (&self.rep_keys[v], self.matching) {
            (Some(k), CosetMatching::Auto) => self.oracle.next_key(self.group, k, s, &candidate)?,
            _ => self.key(&candidate)?,
        };
        Ok((candidate, key))
    }

    fn find(&self, c: &Element, key: Option<&CosetKey>, ranges: &[Range<usize>]) -> Result<Option<usize>> {
        if let Some(key) = key {
            return Ok(self.keys.get(key).copied());
        }
        let c_sub = |rep: &Element| self.oracle.same_coset(self.group, c, rep);
        for range in ranges {
            for idx in range.clone() {
                if c_sub(&self.reps[idx])? {
                    return Ok(Some(idx));
                }
            }
        }
        Ok(None)
    }

    fn push(&mut self, rep: Element, key: Option<CosetKey>, distance: usize) {
        let idx = self.reps.len();
        if let Some(key) = &key {
            self.keys.insert(key.clone(), idx);
        }
        self.rep_keys.push(key);
        self.reps.push(rep);
        self.distances.push(distance as u32);
        self.adjacency.extend(std::iter::repeat_n(OUTSIDE, self.group.rank()));
    }

    /// Resolves all edges out of layer `d` and, unless `last`, creates layer `d + 1`.
    fn expand(&mut self, d: usize, last: bool, vertex_budget: usize) -> Result<()> {
        let rank = self.group.rank();
        let layer = self.layers[d].clone();
        let mut search = Vec::with_capacity(2);
        if d > 0 {
            search.push(self.layers[d - 1].clone());
        }
        search.push(layer.clone());

        let candidates = layer
            .clone()
            .into_par_iter()
            .flat_map_iter(|v| (0..rank).map(move |s| (v, s)))
            .map(|(v, s)| self.candidate(v, s).map(|c| (v, s, c)))
            .collect::<Result<Vec<_>>>()?;
        let mut pending = Vec::new();
        for (v, s, (candidate, key)) in candidates {
            match self.find(&candidate, key.as_ref(), &search)? {
                Some(w) => self.adjacency[v * rank + s] = w as u32,
                None => pending.push(Pending { vertex: v, generator: s, candidate, key }),
            }
        }
        if last {
            return Ok(());
        }

        pending.sort_by(|a, b| a.candidate.cmp(&b.candidate));
        let start = self.reps.len();
        for p in pending {
            #[allow(clippy::single_range_in_vec_init)]
            let new_range = [start..self.reps.len()];
            let w = match self.find(&p.candidate, p.key.as_ref(), &new_range)? {
                Some(w) => w,
                None => {
                    if self.reps.len() >= vertex_budget {
                        return Err(Error::VertexBudget { limit: vertex_budget, radius: d + 1 });
                    }
                    self.push(p.candidate, p.key, d + 1);
                    self.reps.len() - 1
                }
            };
            self.adjacency[p.vertex * rank + p.generator] = w as u32;
        }
        self.layers.push(start..self.reps.len());
        Ok(())
    }

    /// Drops everything beyond layer `d`, turning edges into it into outside edges.
    fn truncate_to(&mut self, d: usize) {
        let end = self.layers[d].end;
        let rank = self.group.rank();
        self.layers.truncate(d + 1);
        self.reps.truncate(end);
        self.rep_keys.truncate(end);
        self.distances.truncate(end);
        self.adjacency.truncate(end * rank);
        for a in &mut self.adjacency {
            if *a != OUTSIDE && *a as usize >= end {
                *a = OUTSIDE;
            }
        }
        self.keys.retain(|_, idx| *idx < end);
    }
}

impl CosetBall {
    pub fn build(
        group: &CoxeterGroup,
        oracle: &MembershipOracle,
        radius: usize,
        vertex_budget: usize,
    ) -> Result<CosetBall> {
        match Self::build_capped(group, oracle, radius, vertex_budget, CosetMatching::Auto) {
            (ball, None) => Ok(ball),
            (_, Some(e)) => Err(e),
        }
    }

    /// Like [`Ball::build_capped`]: the largest complete coset ball within
    /// the budgets, plus the error that stopped growth.
    pub fn build_capped(
        group: &CoxeterGroup,
        oracle: &MembershipOracle,
        radius: usize,
        vertex_budget: usize,
        matching: CosetMatching,
    ) -> (CosetBall, Option<Error>) {
        let mut b = CosetBuilder {
            group,
            oracle,
            matching,
            reps: Vec::new(),
            distances: Vec::new(),
            layers: std::iter::once(0..1).collect(),
            rep_keys: Vec::new(),
            keys: HashMap::new(),
            adjacency: Vec::new(),
        };
        let mut stop = None;
        match b.key(&group.identity()) {
            Ok(key) => b.push(group.identity(), key, 0),
            Err(e) => {
                b.push(group.identity(), None, 0);
                stop = Some(e);
            }
        }

        let mut complete = 0;
        if stop.is_none() {
            for d in 0..=radius {
                let last = d == radius;
                if let Err(e) = b.expand(d, last, vertex_budget) {
                    stop = Some(e);
                    // Layer `d` may have unresolved edges; fall back to the
                    // largest radius whose edges are all known.
                    b.truncate_to(d);
                    complete = d;
                    if last || b.expand(d, true, vertex_budget).is_err() {
                        complete = d.saturating_sub(1);
                        b.truncate_to(complete);
                    }
                    break;
                }
                complete = d;
                if !last && b.layers[d + 1].is_empty() {
                    break;
                }
            }
        }
        let radius = if stop.is_some() { complete } else { radius };
        (
            CosetBall {
                radius,
                rank: group.rank(),
                descriptor: oracle.descriptor(),
                representatives: b.reps,
                distances: b.distances,
                adjacency: b.adjacency,
            },
            stop,
        )
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Element] {
        &self.representatives
    }

    pub fn representative(&self, v: usize) -> &Element {
        &self.representatives[v]
    }

    /// Number of cosets at each distance `0..=radius`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius + 1];
        for &d in &self.distances {
            sizes[d as usize] += 1;
        }
        sizes
    }

    /// Line-oriented dump: `v distance representative`, then edges.
    pub fn dump(&self) -> String {
        let mut out = String::from("# cosets: v_index distance representative\n");
        for (v, rep) in self.representatives.iter().enumerate() {
            let _ = writeln!(out, "{v} {} {rep}", self.distances[v]);
        }
        out.push_str(&dump_edges(self));
        out
    }
}

impl LayeredGraph for CosetBall {
    fn rank(&self) -> usize {
        self.rank
    }

    fn radius(&self) -> usize {
        self.radius
    }

    fn vertex_count(&self) -> usize {
        self.representatives.len()
    }

    fn distance(&self, v: usize) -> usize {
        self.distances[v] as usize
    }

    fn neighbor(&self, v: usize, s: usize) -> Option<usize> {
        let w = self.adjacency[v * self.rank + s];
        (w != OUTSIDE).then_some(w as usize)
    }
}
