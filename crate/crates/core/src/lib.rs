//! Computational tools for Coxeter groups: a ShortLex word-problem solver,
//! Cayley and coset-graph balls, ends estimation, reflection walls and their
//! crossing obstructions, and exact l2-Betti number bounds.

pub mod ball;
pub mod bounds;
pub mod checker;
pub mod ends;
pub mod error;
pub mod finite_oracle;
pub mod group;
mod heap;
pub mod presets;
pub mod rational;
pub mod system;
pub mod walls;

pub use ball::{Ball, CosetBall, LayeredGraph, MembershipOracle, DEFAULT_VERTEX_BUDGET};
pub use bounds::{BoundReport, TriangleParams};
pub use checker::{AnalysisParams, IntersectionProfile, ReflectionReport, SuiteReport};
pub use ends::{EndsEstimate, Verdict};
pub use error::{Error, Result};
pub use group::{CoxeterGroup, Element, Word, DEFAULT_CLOSURE_BUDGET};
pub use rational::Q;
pub use system::{parse_system, parse_system_with_default, CoxeterSystem, Label};
pub use walls::{CrossingReport, CrossingVerdict, Halfspace, Sign, WallCertificate};
