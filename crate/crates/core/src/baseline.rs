//! Box-pruning comparator: recursive bisection in the ray frame with
//! lateral bounding boxes and a closest-point-of-approach leaf test.
//!
//! Children are always visited left before right, whatever the ray
//! direction, and every surviving leaf is tested.

use glam::{Vec3, Vec4Swizzles};

use crate::geometry::{transform_to_ray_frame, CubicBezier, Intersection, Ray};
use crate::stats::Probe;
use crate::traversal::{get_interval, min_size_for_depth, ROOT_SIZE};

/// Lateral bounds of a node in the ray frame, widened by its largest radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb2 {
    pub min_x: f32,
    pub min_y: f32,
    pub max_x: f32,
    pub max_y: f32,
}

impl Aabb2 {
    pub fn from_curve(c: &CubicBezier) -> Self {
        let r = c.max_radius();
        let pts = c.points();
        let mut b = Aabb2 {
            min_x: f32::MAX,
            min_y: f32::MAX,
            max_x: f32::MIN,
            max_y: f32::MIN,
        };
        for p in pts {
            b.min_x = b.min_x.min(p.x);
            b.min_y = b.min_y.min(p.y);
            b.max_x = b.max_x.max(p.x);
            b.max_y = b.max_y.max(p.y);
        }
        b.min_x -= r;
        b.min_y -= r;
        b.max_x += r;
        b.max_y += r;
        b
    }

    /// Whether the ray (the `z` axis) passes through the box.
    pub fn contains_origin(&self) -> bool {
        self.min_x <= 0.0 && self.max_x >= 0.0 && self.min_y <= 0.0 && self.max_y >= 0.0
    }
}

/// Closest approach of the `z` axis to the chord of `c`: `(t, s)` with `s`
/// the chord parameter, if the lateral distance is within the interpolated
/// radius. The squared lateral distance breaks ties between leaves.
fn cpa_leaf(c: &CubicBezier) -> Option<(f32, f32, f32)> {
    let a = c.p0;
    let d = c.p3 - c.p0;
    let dxy = d.xy();
    let len2 = dxy.length_squared();
    let s = if len2 > 0.0 {
        (-a.xy().dot(dxy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let q = a + s * d;
    let dist2 = q.xy().length_squared();
    (dist2 <= q.w * q.w).then_some((q.z, s, dist2))
}

/// Nearest cpa hit of `ray` with `c` at subdivision `depth`.
pub fn intersect_baseline(ray: &Ray, c: &CubicBezier, depth: u32) -> Option<Intersection> {
    intersect_baseline_probed(ray, c, depth, &mut ())
}

/// [`intersect_baseline`] reporting box tests and leaves to `probe`.
pub fn intersect_baseline_probed<P: Probe>(
    ray: &Ray,
    c: &CubicBezier,
    depth: u32,
    probe: &mut P,
) -> Option<Intersection> {
    let min_size = min_size_for_depth(depth).max(1);
    let c_local = transform_to_ray_frame(ray, c);

    let mut best: Option<(f32, f32, u32, u32)> = None;
    let mut best_t = ray.t_max;
    let mut best_dist2 = f32::MAX;
    let mut stack: Vec<(CubicBezier, u32, u32)> = Vec::with_capacity(64);
    stack.push((c_local, 0, ROOT_SIZE));

    while let Some((node, start, size)) = stack.pop() {
        probe.node(start, size);
        probe.aabb_test();
        if !Aabb2::from_curve(&node).contains_origin() {
            continue;
        }
        if size <= min_size {
            probe.leaf(start, size);
            if let Some((t, s, dist2)) = cpa_leaf(&node) {
                if t >= 0.0 && (t < best_t || (t == best_t && dist2 < best_dist2)) {
                    best_t = t;
                    best_dist2 = dist2;
                    best = Some((t, s, start, size));
                }
            }
            continue;
        }
        let half = size / 2;
        let (l, r) = node.split_half();
        // Pushed right first so the left child is popped first.
        stack.push((r, start + half, half));
        stack.push((l, start, half));
    }

    best.map(|(t, s, start, size)| {
        let (u0, u1) = get_interval(start, size);
        let u = u0 + s * (u1 - u0);
        let tangent = (c.eval_derivative(u)).xyz();
        Intersection {
            t,
            u,
            normal: ribbon_normal(ray.direction, tangent),
        }
    })
}

/// `-dir` made perpendicular to the fiber tangent: the flat ribbon look.
fn ribbon_normal(dir: Vec3, tangent: Vec3) -> Vec3 {
    let n = -dir;
    match tangent.try_normalize() {
        Some(t) => (n - n.dot(t) * t).try_normalize().unwrap_or(n),
        None => n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::Counters;
    use glam::Vec4;

    fn straight() -> CubicBezier {
        CubicBezier::new(
            Vec4::new(0.0, 0.0, 0.0, 0.1),
            Vec4::new(2.0, 0.0, 0.0, 0.1),
            Vec4::new(4.0, 0.0, 0.0, 0.1),
            Vec4::new(6.0, 0.0, 0.0, 0.1),
        )
    }

    #[test]
    fn perpendicular_hit_is_axis_cpa() {
        let ray = Ray::unbounded(Vec3::new(3.0, 0.0, -5.0), Vec3::Z);
        let hit = intersect_baseline(&ray, &straight(), 10).unwrap();
        assert!((hit.t - 5.0).abs() < 1e-5);
        assert!((hit.u - 0.5).abs() < 1e-5);
        assert!(hit.normal.abs_diff_eq(Vec3::new(0.0, 0.0, -1.0), 1e-6));
    }

    #[test]
    fn far_ray_pruned_at_root() {
        let ray = Ray::unbounded(Vec3::new(3.0, 5.0, -5.0), Vec3::Z);
        let mut n = Counters::default();
        assert!(intersect_baseline_probed(&ray, &straight(), 12, &mut n).is_none());
        assert_eq!(n.leaves, 0);
        assert_eq!(n.aabb_tests, 1);
    }

    #[test]
    fn box_widening() {
        let b = Aabb2::from_curve(&straight());
        assert_eq!((b.min_x, b.max_x), (-0.1, 6.1));
        assert_eq!((b.min_y, b.max_y), (-0.1, 0.1));
    }

    #[test]
    fn ribbon_normal_is_flat() {
        let n = ribbon_normal(Vec3::Z, Vec3::new(1.0, 0.0, 1.0));
        assert!(n.dot(Vec3::new(1.0, 0.0, 1.0)).abs() < 1e-6);
        assert!((n.length() - 1.0).abs() < 1e-6);
    }
}
