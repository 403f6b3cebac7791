//! Seeded random fibers and ray sets for sweeps and tests.

use glam::{Vec3, Vec4};
use rand::Rng;

use crate::constraints::{check, check_quadratic, QuadraticBezier};
use crate::geometry::{make_onb, CubicBezier, Ray};

/// Uniform direction on the unit sphere.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    let z: f32 = rng.random_range(-1.0..=1.0);
    let phi: f32 = rng.random_range(0.0..std::f32::consts::TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), z)
}

/// Uniform point in the unit ball.
pub fn in_unit_ball<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let p = Vec3::new(
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        );
        if p.length_squared() <= 1.0 {
            return p;
        }
    }
}

/// A random cubic fiber of unit-order length that passes [`check`].
///
/// Inner control points stay at least a quarter of the length from their
/// end points and radii taper by at most 5% of the mean radius, so the
/// surface stays close to a tube around the centerline.
pub fn random_valid_fiber<R: Rng + ?Sized>(rng: &mut R) -> CubicBezier {
    loop {
        let len: f32 = rng.random_range(0.5..2.0);
        let dir = unit_vector(rng);
        let (a, b) = make_onb(dir);
        let p0 = 2.0 * in_unit_ball(rng);
        let bend = |rng: &mut R| {
            let amp: f32 = rng.random_range(0.0..0.45);
            let phi: f32 = rng.random_range(0.0..std::f32::consts::TAU);
            amp * len * (phi.cos() * a + phi.sin() * b)
        };
        let s1: f32 = rng.random_range(0.25..0.45);
        let s2: f32 = rng.random_range(0.55..0.75);
        let p1 = p0 + s1 * len * dir + bend(rng);
        let p2 = p0 + s2 * len * dir + bend(rng);
        let p3 = p0 + len * dir + 0.3 * bend(rng);

        let r: f32 = len * rng.random_range(0.01..0.06);
        let taper = |rng: &mut R| r * (1.0 + rng.random_range(-0.05..0.05));
        let c = CubicBezier::new(
            p0.extend(taper(rng)),
            p1.extend(taper(rng)),
            p2.extend(taper(rng)),
            p3.extend(taper(rng)),
        );
        let min_arm = 0.25 * (p3 - p0).length();
        if (p1 - p0).length() >= min_arm && (p3 - p2).length() >= min_arm && check(&c).satisfied {
            return c;
        }
    }
}

/// A random cubic within the disjointness inequalities, without radius.
///
/// Unlike [`random_valid_fiber`] the control polygon is unconstrained
/// apart from the inequalities, so sharp turns and short arms occur.
pub fn random_cubic_in_constraints<R: Rng + ?Sized>(rng: &mut R) -> CubicBezier {
    loop {
        let pts: [Vec4; 4] = std::array::from_fn(|_| (2.0 * in_unit_ball(rng)).extend(0.0));
        let c = CubicBezier::new(pts[0], pts[1], pts[2], pts[3]);
        if crate::constraints::check_cubic(&c) {
            return c;
        }
    }
}

/// A random quadratic passing [`check_quadratic`].
pub fn random_valid_quadratic<R: Rng + ?Sized>(rng: &mut R) -> QuadraticBezier {
    loop {
        let pts: [Vec4; 3] =
            std::array::from_fn(|_| (2.0 * in_unit_ball(rng)).extend(rng.random_range(0.0..0.1)));
        let q = QuadraticBezier::new(pts[0], pts[1], pts[2]);
        if check_quadratic(&q) {
            return q;
        }
    }
}

/// Bench ray: origin on the sphere of twice the bounding radius, aimed at
/// a uniform point inside the bounding sphere.
pub fn bounding_sphere_ray<R: Rng + ?Sized>(rng: &mut R, center: Vec3, radius: f32) -> Ray {
    let origin = center + 2.0 * radius * unit_vector(rng);
    let target = center + radius * in_unit_ball(rng);
    Ray::unbounded(origin, target - origin)
}

/// Ray from the sphere of twice the bounding radius of `c` toward a point
/// within 1.5 radii of a uniformly chosen curve point, so that about half
/// of such rays hit.
pub fn near_fiber_ray<R: Rng + ?Sized>(rng: &mut R, c: &CubicBezier) -> Ray {
    let (center, radius) = c.bounding_sphere();
    let p = c.eval(rng.random_range(0.0..1.0));
    let target = p.truncate() + 1.5 * p.w * in_unit_ball(rng);
    let origin = center + 2.0 * radius * unit_vector(rng);
    Ray::unbounded(origin, target - origin)
}

/// Bounding sphere of several fibers.
pub fn scene_bounds(curves: &[CubicBezier]) -> (Vec3, f32) {
    if curves.is_empty() {
        return (Vec3::ZERO, 1.0);
    }
    let mut lo = Vec3::splat(f32::MAX);
    let mut hi = Vec3::splat(f32::MIN);
    for c in curves {
        let (center, r) = c.bounding_sphere();
        lo = lo.min(center - r);
        hi = hi.max(center + r);
    }
    let center = 0.5 * (lo + hi);
    let radius = curves
        .iter()
        .map(|c| {
            let (cc, r) = c.bounding_sphere();
            cc.distance(center) + r
        })
        .fold(0.0, f32::max);
    (center, radius.max(1e-6))
}
