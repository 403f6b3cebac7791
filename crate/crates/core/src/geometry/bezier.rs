use glam::{Vec3, Vec4, Vec4Swizzles};

use super::{make_onb, Ray};

/// Cubic Bezier curve with four-dimensional control points: `xyz` is the
/// position, `w` the radius of the fiber at that control point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicBezier {
    pub p0: Vec4,
    pub p1: Vec4,
    pub p2: Vec4,
    pub p3: Vec4,
}

impl CubicBezier {
    pub const fn new(p0: Vec4, p1: Vec4, p2: Vec4, p3: Vec4) -> Self {
        Self { p0, p1, p2, p3 }
    }

    pub fn from_array(points: [[f32; 4]; 4]) -> Self {
        let [a, b, c, d] = points.map(Vec4::from_array);
        Self::new(a, b, c, d)
    }

    pub fn to_array(&self) -> [[f32; 4]; 4] {
        self.points().map(|p| p.to_array())
    }

    pub fn points(&self) -> [Vec4; 4] {
        [self.p0, self.p1, self.p2, self.p3]
    }

    /// Finite components and non-negative radii.
    pub fn is_well_formed(&self) -> bool {
        self.points().iter().all(|p| p.is_finite() && p.w >= 0.0)
    }

    /// Bernstein evaluation at `u`.
    #[inline]
    pub fn eval(&self, u: f32) -> Vec4 {
        let v = 1.0 - u;
        v * v * v * self.p0
            + 3.0 * u * v * v * self.p1
            + 3.0 * u * u * v * self.p2
            + u * u * u * self.p3
    }

    /// Derivative at `u`, divided by three.
    #[inline]
    pub fn eval_derivative(&self, u: f32) -> Vec4 {
        let v = 1.0 - u;
        v * v * (self.p1 - self.p0)
            + 2.0 * u * v * (self.p2 - self.p1)
            + u * u * (self.p3 - self.p2)
    }

    /// De Casteljau subdivision at `u = 1/2`.
    pub fn split_half(&self) -> (CubicBezier, CubicBezier) {
        let p01 = 0.5 * (self.p0 + self.p1);
        let p12 = 0.5 * (self.p1 + self.p2);
        let p23 = 0.5 * (self.p2 + self.p3);
        let p012 = 0.5 * (p01 + p12);
        let p123 = 0.5 * (p12 + p23);
        let mid = 0.5 * (p012 + p123);
        (
            CubicBezier::new(self.p0, p01, p012, mid),
            CubicBezier::new(mid, p123, p23, self.p3),
        )
    }

    /// Same trace, opposite parameterization.
    pub fn reversed(&self) -> CubicBezier {
        CubicBezier::new(self.p3, self.p2, self.p1, self.p0)
    }

    /// Largest control radius; bounds the radius along the curve by the convex hull property.
    pub fn max_radius(&self) -> f32 {
        self.p0.w.max(self.p1.w).max(self.p2.w).max(self.p3.w)
    }

    /// Centre and radius of a sphere enclosing the fiber (control hull plus max radius).
    pub fn bounding_sphere(&self) -> (Vec3, f32) {
        let pts = self.points().map(|p| p.xyz());
        let lo = pts.iter().copied().fold(Vec3::splat(f32::MAX), Vec3::min);
        let hi = pts.iter().copied().fold(Vec3::splat(f32::MIN), Vec3::max);
        let center = 0.5 * (lo + hi);
        let radius = pts.iter().map(|p| p.distance(center)).fold(0.0, f32::max);
        (center, radius + self.max_radius())
    }
}

#[inline]
fn transform_point(p: Vec4, origin: Vec3, u: Vec3, v: Vec3, w: Vec3) -> Vec4 {
    let q = p.xyz() - origin;
    Vec4::new(q.dot(u), q.dot(v), q.dot(w), p.w)
}

/// Expresses `c` in the frame where `ray` starts in the origin and runs along `+z`.
pub fn transform_to_ray_frame(ray: &Ray, c: &CubicBezier) -> CubicBezier {
    let w = ray.direction;
    let (u, v) = make_onb(w);
    let o = ray.origin;
    CubicBezier::new(
        transform_point(c.p0, o, u, v, w),
        transform_point(c.p1, o, u, v, w),
        transform_point(c.p2, o, u, v, w),
        transform_point(c.p3, o, u, v, w),
    )
}
