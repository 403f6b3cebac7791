//! Which curves the disjoint-cylinder traversal supports.
//!
//! A midpoint split of a valid curve yields children on opposite sides of
//! the plane through the split point orthogonal to the split tangent, and
//! both children are valid again. Validity is a set of dot-product
//! inequalities on the control points ([`check_cubic`], [`check_quadratic`]).
//! Thick fibers can still reach across an end plane with their surface;
//! [`check_fiber_overlap`] detects that. [`presplit`] bisects a curve until
//! every piece passes both.

mod overlap;
mod presplit;

use std::fmt;

use glam::{DVec3, Vec4};
use serde::Serialize;

use crate::geometry::CubicBezier;

pub use overlap::{check_fiber_overlap, end_plane_excess};
pub use presplit::{presplit, Piece, PresplitError, DEFAULT_MAX_SPLITS};

/// Slack on the dot-product inequalities, relative to the squared extent of
/// the control polygon.
pub const DEFAULT_SLACK: f64 = 1e-7;

/// Quadratic Bezier curve with radius in `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticBezier {
    pub p0: Vec4,
    pub p1: Vec4,
    pub p2: Vec4,
}

impl QuadraticBezier {
    pub const fn new(p0: Vec4, p1: Vec4, p2: Vec4) -> Self {
        Self { p0, p1, p2 }
    }

    pub fn eval(&self, u: f32) -> Vec4 {
        let v = 1.0 - u;
        v * v * self.p0 + 2.0 * u * v * self.p1 + u * u * self.p2
    }

    /// De Casteljau subdivision at `u = 1/2`.
    pub fn split_half(&self) -> (QuadraticBezier, QuadraticBezier) {
        let a = 0.5 * (self.p0 + self.p1);
        let b = 0.5 * (self.p1 + self.p2);
        let m = 0.5 * (a + b);
        (
            QuadraticBezier::new(self.p0, a, m),
            QuadraticBezier::new(m, b, self.p2),
        )
    }
}

/// One of the five inequalities a cubic must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CubicTerm {
    /// `<p2 - p0, p1 - p0> >= 0`
    P2P0P1P0,
    /// `<p3 - p1, p1 - p0> >= 0`
    P3P1P1P0,
    /// `<p3 - p1, p3 - p2> >= 0`
    P3P1P3P2,
    /// `<p2 - p0, p3 - p2> >= 0`
    P2P0P3P2,
    /// `<p2 - p0, p3 - p1> >= 0`
    P2P0P3P1,
}

impl CubicTerm {
    pub const ALL: [CubicTerm; 5] = [
        CubicTerm::P2P0P1P0,
        CubicTerm::P3P1P1P0,
        CubicTerm::P3P1P3P2,
        CubicTerm::P2P0P3P2,
        CubicTerm::P2P0P3P1,
    ];

    fn value(self, p: &[DVec3; 4]) -> f64 {
        let [p0, p1, p2, p3] = *p;
        match self {
            CubicTerm::P2P0P1P0 => (p2 - p0).dot(p1 - p0),
            CubicTerm::P3P1P1P0 => (p3 - p1).dot(p1 - p0),
            CubicTerm::P3P1P3P2 => (p3 - p1).dot(p3 - p2),
            CubicTerm::P2P0P3P2 => (p2 - p0).dot(p3 - p2),
            CubicTerm::P2P0P3P1 => (p2 - p0).dot(p3 - p1),
        }
    }
}

impl fmt::Display for CubicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicTerm::P2P0P1P0 => "<p2-p0, p1-p0> >= 0",
            CubicTerm::P3P1P1P0 => "<p3-p1, p1-p0> >= 0",
            CubicTerm::P3P1P3P2 => "<p3-p1, p3-p2> >= 0",
            CubicTerm::P2P0P3P2 => "<p2-p0, p3-p2> >= 0",
            CubicTerm::P2P0P3P1 => "<p2-p0, p3-p1> >= 0",
        })
    }
}

pub(crate) fn positions(c: &CubicBezier) -> [DVec3; 4] {
    c.points().map(|p| p.truncate().as_dvec3())
}

fn squared_extent(points: &[DVec3]) -> f64 {
    points
        .iter()
        .map(|p| p.distance_squared(points[0]))
        .fold(0.0, f64::max)
}

/// Values of the five cubic inequalities, in [`CubicTerm::ALL`] order.
pub fn cubic_terms(c: &CubicBezier) -> [f64; 5] {
    let p = positions(c);
    CubicTerm::ALL.map(|t| t.value(&p))
}

/// Inequalities violated beyond `rel_slack` times the squared extent of the control polygon.
pub fn violated_terms(c: &CubicBezier, rel_slack: f64) -> Vec<CubicTerm> {
    let p = positions(c);
    let slack = rel_slack * squared_extent(&p);
    CubicTerm::ALL
        .into_iter()
        .filter(|t| t.value(&p) < -slack)
        .collect()
}

/// True when the cubic can be bisected recursively into children with
/// disjoint bounding volumes.
pub fn check_cubic(c: &CubicBezier) -> bool {
    violated_terms(c, DEFAULT_SLACK).is_empty()
}

/// `<p1 - p0, p1 - p2> <= 0` with relative slack.
pub fn check_quadratic_slack(q: &QuadraticBezier, rel_slack: f64) -> bool {
    let p = [q.p0, q.p1, q.p2].map(|p| p.truncate().as_dvec3());
    let slack = rel_slack * squared_extent(&p);
    (p[1] - p[0]).dot(p[1] - p[2]) <= slack
}

/// True when the quadratic can be bisected recursively into children with
/// disjoint bounding volumes.
pub fn check_quadratic(q: &QuadraticBezier) -> bool {
    check_quadratic_slack(q, DEFAULT_SLACK)
}

/// Exact degree elevation to a cubic, radius included.
pub fn elevate_quadratic(q: &QuadraticBezier) -> CubicBezier {
    CubicBezier::new(
        q.p0,
        (q.p0 + 2.0 * q.p1) / 3.0,
        (2.0 * q.p1 + q.p2) / 3.0,
        q.p2,
    )
}

/// Outcome of validating one fiber.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub satisfied: bool,
    pub violated_terms: Vec<CubicTerm>,
    /// The surface crosses one of the end planes.
    pub overlap_flagged: bool,
}

/// Runs the cubic inequalities and the end-plane overlap test with the
/// fiber's largest control radius.
pub fn check(c: &CubicBezier) -> ConstraintReport {
    let violated_terms = violated_terms(c, DEFAULT_SLACK);
    let overlap_flagged = check_fiber_overlap(c, c.max_radius() as f64);
    ConstraintReport {
        satisfied: violated_terms.is_empty() && !overlap_flagged,
        violated_terms,
        overlap_flagged,
    }
}
