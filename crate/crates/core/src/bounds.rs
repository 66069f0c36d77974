//! Exact first l2-Betti number bounds for Coxeter groups and triangle groups.
//!
//! Everything here is rational arithmetic. The general lower bound for a
//! Coxeter presentation is `n/2 - 1 - sum 1/m_ij` over pairs with finite
//! label; it agrees term by term with the closed form for the `W_n` family,
//! which is implemented separately so the two can be compared.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::system::{CoxeterSystem, Label};

/// Caveat attached to every report that uses the general lower bound.
pub const LOWER_BOUND_CAVEAT: &str =
    "lower bound per family-validated formula n/2 - 1 - sum(1/m_ij); hypotheses of the underlying theorem not checked";

#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

/// Triangle group parameters `(p, q, r)`, each at least 2.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TriangleParams {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl TriangleParams {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        if p < 2 || q < 2 || r < 2 {
            return Err(Error::InvalidArgument(format!(
                "triangle parameters ({p}, {q}, {r}) must all be at least 2"
            )));
        }
        Ok(TriangleParams { p, q, r })
    }

    /// `1/p + 1/q + 1/r`.
    pub fn reciprocal_sum(&self) -> Q {
        Q::recip_of(self.p.into()) + Q::recip_of(self.q.into()) + Q::recip_of(self.r.into())
    }

    pub fn geometry(&self) -> Geometry {
        let s = self.reciprocal_sum();
        if s < 1 {
            Geometry::Hyperbolic
        } else if s == 1 {
            Geometry::Euclidean
        } else {
            Geometry::Spherical
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.geometry() == Geometry::Hyperbolic
    }
}

/// `n/2 - 1 - sum over finite labels of 1/m`.
pub fn coxeter_betti_lower_bound(sys: &CoxeterSystem) -> Q {
    let finite: Q = sys
        .pairs()
        .filter_map(|(_, l)| l.finite())
        .map(|m| Q::recip_of(m.into()))
        .sum();
    Q::new(sys.rank() as i64, 2) - Q::one() - finite
}

/// Orbifold Euler characteristic `(1/p + 1/q + 1/r - 1) / 2`.
pub fn triangle_euler_char(t: TriangleParams) -> Q {
    (t.reciprocal_sum() - Q::one()) * Q::new(1, 2)
}

/// `-chi(T(p,q,r))` for hyperbolic triangles, 0 for Euclidean ones.
pub fn triangle_betti(t: TriangleParams) -> Result<Q> {
    match t.geometry() {
        Geometry::Spherical => Err(Error::InvalidArgument(format!(
            "({}, {}, {}) is spherical; the formula only covers Euclidean and hyperbolic triangles",
            t.p, t.q, t.r
        ))),
        Geometry::Euclidean => Ok(Q::zero()),
        Geometry::Hyperbolic => Ok(-triangle_euler_char(t)),
    }
}

/// `-chi(S_g) = 2g - 2` for a closed orientable surface of genus `g >= 1`.
pub fn surface_betti(genus: u32) -> Result<Q> {
    if genus == 0 {
        return Err(Error::InvalidArgument("the sphere (genus 0) is excluded".into()));
    }
    Ok(Q::from_int(2 * genus as i64 - 2))
}

/// Value for an index-`k` subgroup: Betti numbers are multiplicative on indices.
pub fn betti_scale_finite_index(beta: &Q, index: u64) -> Result<Q> {
    if index == 0 {
        return Err(Error::InvalidArgument("index must be at least 1".into()));
    }
    Ok(beta * &Q::from_int(index as i64))
}

/// `beta(C(s1)) = beta(T(p,q,r)) / 2` for `C(s1) = T(p,q,r) x Z/2`.
pub fn centralizer_betti_family(t: TriangleParams) -> Result<Q> {
    Ok(triangle_betti(t)? * Q::new(1, 2))
}

/// The `W_n` family: `s1` commutes with `s2, s3, s4`, is free against
/// `s5..sn`, the triangle `s2, s3, s4` carries `(p, q, r)` and every other
/// pair has label `n^2`.
pub fn family_system(n: usize, t: TriangleParams) -> Result<CoxeterSystem> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("family needs n >= 5, got {n}")));
    }
    let other = u32::try_from(n * n)
        .map_err(|_| Error::InvalidArgument(format!("n = {n} too large")))?;
    CoxeterSystem::from_fn(n, |i, j| match (i + 1, j + 1) {
        (1, 2..=4) => Label::Finite(2),
        (1, _) => Label::Infinite,
        (2, 3) => Label::Finite(t.p),
        (2, 4) => Label::Finite(t.q),
        (3, 4) => Label::Finite(t.r),
        _ => Label::Finite(other),
    })
}

/// Recognizes a `W_n` instance and returns its `(n, (p, q, r))`.
pub fn detect_family(sys: &CoxeterSystem) -> Option<(usize, TriangleParams)> {
    if sys.rank() < 5 {
        return None;
    }
    let p = sys.label(1, 2).finite()?;
    let q = sys.label(1, 3).finite()?;
    let r = sys.label(2, 3).finite()?;
    let t = TriangleParams::new(p, q, r).ok()?;
    let candidate = family_system(sys.rank(), t).ok()?;
    (candidate.pairs().eq(sys.pairs())).then_some((sys.rank(), t))
}

/// Closed form of the family bound as displayed:
/// `n/2 - 1 - (3/2 + 1/p + 1/q + 1/r + (1/n^2)(n(n-1)/2 - (n - 1 + 3)))`.
pub fn family_bound_display(n: usize, t: TriangleParams) -> Q {
    let n_i = n as i64;
    let n2 = Q::from_int(n_i * n_i);
    let remaining = Q::new(n_i * (n_i - 1), 2) - Q::from_int(n_i - 1 + 3);
    Q::new(n_i, 2)
        - Q::one()
        - (Q::new(3, 2) + t.reciprocal_sum() + remaining / n2)
}

/// Both sides of `(n - 6 + 3/n + 4/n^2)/2 - (1/p + 1/q + 1/r) > -chi/2`.
pub fn splitting_inequality_display(n: usize, t: TriangleParams) -> (Q, Q) {
    let n_i = n as i64;
    let lhs = (Q::from_int(n_i - 6) + Q::new(3, n_i) + Q::new(4, n_i * n_i)) * Q::new(1, 2)
        - t.reciprocal_sum();
    let rhs = -triangle_euler_char(t) * Q::new(1, 2);
    (lhs, rhs)
}

/// `3 chi(T) + 2`; the sufficient criterion is `n - 6 > 3 chi + 2`.
pub fn sufficient_threshold(t: TriangleParams) -> Q {
    triangle_euler_char(t) * Q::from_int(3) + Q::from_int(2)
}

pub fn sufficient_criterion_holds(n: usize, t: TriangleParams) -> bool {
    Q::from_int(n as i64 - 6) > sufficient_threshold(t)
}

/// `beta(H) / beta(G)`; a finite-index `G' > H` qualifies when `[G:G']` exceeds it.
pub fn index_threshold(beta_h: &Q, beta_g: &Q) -> Result<Q> {
    if !beta_g.is_positive() {
        return Err(Error::InvalidArgument(format!("beta(G) = {beta_g} must be positive")));
    }
    Ok(beta_h / beta_g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub triangle: TriangleParams,
    /// General lower bound evaluated on the family presentation.
    pub lower_bound: Q,
    /// The same bound from the closed-form family expression.
    pub lower_bound_display: Q,
    pub centralizer_value: Q,
    pub inequality_holds: bool,
    pub display_lhs: Q,
    pub display_rhs: Q,
    pub display_inequality_holds: bool,
    pub sufficient_threshold: Q,
    pub sufficient_criterion_holds: bool,
    /// Least `n >= 5` for which the inequality holds, when requested.
    pub minimal_n: Option<usize>,
    pub minimal_sufficient_n: Option<usize>,
    pub index_threshold: Option<Q>,
    pub caveat: &'static str,
}

impl BoundReport {
    /// The presentation-based and closed-form routes agree everywhere.
    pub fn routes_agree(&self) -> bool {
        self.lower_bound == self.lower_bound_display
            && self.inequality_holds == self.display_inequality_holds
    }
}

/// Evaluates the family inequality both from the presentation and from the
/// closed form, together with the sufficient criterion.
pub fn splitting_criterion(n: usize, t: TriangleParams) -> Result<BoundReport> {
    if !t.is_hyperbolic() {
        return Err(Error::InvalidArgument(format!(
            "({}, {}, {}) is not hyperbolic",
            t.p, t.q, t.r
        )));
    }
    let sys = family_system(n, t)?;
    let lower_bound = coxeter_betti_lower_bound(&sys);
    let centralizer_value = centralizer_betti_family(t)?;
    let (display_lhs, display_rhs) = splitting_inequality_display(n, t);
    let index_threshold = index_threshold(&centralizer_value, &lower_bound).ok();
    let report = BoundReport {
        n,
        triangle: t,
        lower_bound_display: family_bound_display(n, t),
        inequality_holds: lower_bound > centralizer_value,
        display_inequality_holds: display_lhs > display_rhs,
        lower_bound,
        centralizer_value,
        display_lhs,
        display_rhs,
        sufficient_threshold: sufficient_threshold(t),
        sufficient_criterion_holds: sufficient_criterion_holds(n, t),
        minimal_n: None,
        minimal_sufficient_n: None,
        index_threshold,
        caveat: LOWER_BOUND_CAVEAT,
    };
    debug_assert!(report.routes_agree());
    Ok(report)
}

/// Least `n >= 5` with `beta(W_n) > beta(C(s1))`.
///
/// The left side of the inequality increases with `n` and the sufficient
/// criterion holds from `floor(3 chi + 8) + 1` on, so the scan is finite.
pub fn minimal_n(t: TriangleParams) -> Result<usize> {
    let ceiling = minimal_sufficient_n(t)?;
    for n in 5..=ceiling {
        if splitting_criterion(n, t)?.inequality_holds {
            return Ok(n);
        }
    }
    Ok(ceiling)
}

/// Least `n >= 5` with `n - 6 > 3 chi + 2`.
pub fn minimal_sufficient_n(t: TriangleParams) -> Result<usize> {
    let floor = (sufficient_threshold(t) + Q::from_int(6)).floor();
    let n: i64 = floor.try_into().map_err(|_| Error::InvalidArgument("threshold overflow".into()))?;
    Ok((n + 1).max(5) as usize)
}

/// [`splitting_criterion`] with the minimal `n` searches filled in.
pub fn splitting_report(n: usize, t: TriangleParams) -> Result<BoundReport> {
    let mut report = splitting_criterion(n, t)?;
    report.minimal_n = Some(minimal_n(t)?);
    report.minimal_sufficient_n = Some(minimal_sufficient_n(t)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u32, q: u32, r: u32) -> TriangleParams {
        TriangleParams::new(p, q, r).unwrap()
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(triangle_euler_char(t(2, 3, 7)), Q::new(-1, 84));
        assert_eq!(triangle_euler_char(t(3, 3, 3)), Q::zero());
        assert_eq!(triangle_euler_char(t(2, 3, 8)), Q::new(-1, 48));
    }

    #[test]
    fn triangle_bettis() {
        assert_eq!(triangle_betti(t(2, 3, 7)).unwrap(), Q::new(1, 84));
        assert_eq!(triangle_betti(t(3, 3, 3)).unwrap(), Q::zero());
        assert_eq!(triangle_betti(t(2, 4, 5)).unwrap(), Q::new(1, 40));
        assert!(triangle_betti(t(2, 3, 5)).is_err());
        assert!(TriangleParams::new(1, 3, 7).is_err());
    }

    #[test]
    fn surfaces_and_scaling() {
        assert_eq!(surface_betti(3).unwrap(), Q::from_int(4));
        assert_eq!(surface_betti(1).unwrap(), Q::zero());
        assert_eq!(surface_betti(2).unwrap(), Q::from_int(2));
        assert!(surface_betti(0).is_err());
        let b = Q::new(1, 84);
        assert_eq!(betti_scale_finite_index(&b, 336).unwrap(), Q::from_int(4));
        assert_eq!(betti_scale_finite_index(&b, 1).unwrap(), b);
        assert_eq!(betti_scale_finite_index(&b, 2).unwrap(), Q::new(1, 42));
        assert!(betti_scale_finite_index(&b, 0).is_err());
    }

    #[test]
    fn centralizer_values() {
        assert_eq!(centralizer_betti_family(t(2, 3, 7)).unwrap(), Q::new(1, 168));
        assert_eq!(centralizer_betti_family(t(2, 4, 5)).unwrap(), Q::new(1, 80));
        assert_eq!(centralizer_betti_family(t(2, 3, 8)).unwrap(), Q::new(1, 96));
        assert!(centralizer_betti_family(t(2, 2, 5)).is_err());
    }

    #[test]
    fn family_label_census() {
        let sys = family_system(8, t(2, 3, 7)).unwrap();
        let count = |l: Label| sys.pairs().filter(|(_, x)| *x == l).count();
        // Three commuting pairs at s1 plus p = 2 on the triangle.
        assert_eq!(count(Label::Finite(2)), 4);
        assert_eq!(count(Label::Infinite), 4);
        assert_eq!(count(Label::Finite(64)), 18);
        assert_eq!((sys.label(1, 2), sys.label(1, 3), sys.label(2, 3)),
            (Label::Finite(2), Label::Finite(3), Label::Finite(7)));
        let commuting: Vec<usize> = (1..8).filter(|&j| sys.commutes(0, j)).collect();
        assert_eq!(commuting, vec![1, 2, 3]);

        let small = family_system(5, t(2, 3, 7)).unwrap();
        assert_eq!(small.pairs().filter(|(_, x)| *x == Label::Finite(25)).count(), 3);
        assert!(family_system(4, t(2, 3, 7)).is_err());
        assert_eq!(detect_family(&sys), Some((8, t(2, 3, 7))));
        assert_eq!(detect_family(&crate::presets::eight_generator_example(51)), None);
    }

    #[test]
    fn lower_bounds() {
        let sys = family_system(8, t(2, 3, 7)).unwrap();
        assert_eq!(coxeter_betti_lower_bound(&sys), Q::new(163, 672));
        let ex1 = crate::presets::eight_generator_example(51);
        assert_eq!(coxeter_betti_lower_bound(&ex1), Q::new(5, 34));
        let rank1 = CoxeterSystem::new(1, Label::Infinite).unwrap();
        assert_eq!(coxeter_betti_lower_bound(&rank1), Q::new(-1, 2));
    }

    #[test]
    fn splitting_at_eight_and_seven() {
        let r8 = splitting_report(8, t(2, 3, 7)).unwrap();
        assert!(r8.inequality_holds && r8.sufficient_criterion_holds && r8.routes_agree());
        assert_eq!(r8.minimal_n, Some(8));
        assert_eq!(r8.minimal_sufficient_n, Some(8));
        let r7 = splitting_criterion(7, t(2, 3, 7)).unwrap();
        assert!(!r7.sufficient_criterion_holds);
        assert!(!r7.inequality_holds);
        assert_eq!(r7.sufficient_threshold, Q::new(55, 28));
        assert!(splitting_criterion(8, t(3, 3, 3)).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(index_threshold(&Q::new(1, 168), &Q::new(163, 672)).unwrap(), Q::new(4, 163));
        assert_eq!(index_threshold(&Q::zero(), &Q::new(1, 3)).unwrap(), Q::zero());
        assert_eq!(index_threshold(&Q::one(), &Q::new(1, 2)).unwrap(), Q::from_int(2));
        assert!(index_threshold(&Q::one(), &Q::zero()).is_err());
        assert!(index_threshold(&Q::one(), &Q::new(-1, 2)).is_err());
    }
}
