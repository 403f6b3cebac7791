use glam::{Vec3, Vec4Swizzles};

use super::delta::{to_delta, DeltaCurve};
use super::interval::{get_interval, min_size_for_depth, TraversalState, ROOT_SIZE};
use crate::geometry::{
    dist_2points_line, intersect_cylinder, intersect_plane, make_onb, transform_to_ray_frame,
    CubicBezier, Intersection, Ray, CYLINDER_MISS,
};
use crate::stats::Probe;

/// Planes whose normal has a `z` component below this fraction of its
/// length are treated as parallel to the unit ray.
const PARALLEL_PLANE_EPS: f32 = 1e-12;

const EMPTY_INTERVAL: (f32, f32) = (f32::MAX, -f32::MAX);

#[inline]
fn parallel_to_ray(n: Vec3) -> bool {
    n.z.abs() <= PARALLEL_PLANE_EPS * n.length()
}

/// Rebuilds the delta form of `c_local` restricted to the node `(cur_start, cur_size)`.
///
/// The chord is expanded around `u0` instead of differencing two
/// evaluations, which would lose all significant bits at deep levels.
pub fn calculate_control_points(
    c_local: &CubicBezier,
    cur_start: u32,
    cur_size: u32,
) -> DeltaCurve {
    let (u0, u1) = get_interval(cur_start, cur_size);
    let h = u1 - u0;
    let p = c_local.eval(u0);
    let d0 = c_local.eval_derivative(u0);
    let d1 = c_local.eval_derivative(u1);

    let [p0, p1, p2, p3] = c_local.points();
    let second = (1.0 - u0) * (p2 - 2.0 * p1 + p0) + u0 * (p3 - 2.0 * p2 + p1);
    let third = p3 - 3.0 * p2 + 3.0 * p1 - p0;
    let d = h * (3.0 * d0 + h * (3.0 * second + h * third));

    DeltaCurve {
        p,
        d,
        t0: h * d0,
        t1: h * d1,
    }
}

/// Radius of a cylinder around the chord that encloses the curve segment:
/// lateral offset of the inner control points plus the largest control radius.
#[inline]
pub fn calculate_conservative_radius(c: &DeltaCurve) -> f32 {
    let dist = dist_2points_line(c.t0.xyz(), c.t1.xyz(), c.d.xyz());
    let max_r = c.p.w + (0.0f32.max(c.t0.w)).max(c.d.w.max(c.d.w - c.t1.w));
    dist + max_r
}

/// Part of `[0, ray_t_max]` between the start plane (through `p`, normal
/// `t0`) and the end plane (through `p + d`, normal `t1`).
///
/// A cap plane parallel to the ray does not clip; if the ray lies on its
/// outer side the interval is empty. Empty intervals have `t_min > t_max`.
pub fn calculate_t_interval(c: &DeltaCurve, ray_t_max: f32) -> (f32, f32) {
    let start = c.p.xyz();
    let n0 = c.t0.xyz();
    let end = (c.p + c.d).xyz();
    let n1 = c.t1.xyz();

    let mut t_min = 0.0f32;
    let mut t_max = ray_t_max;

    if parallel_to_ray(n0) {
        if n0.dot(-start) < 0.0 {
            return EMPTY_INTERVAL;
        }
    } else {
        let t = intersect_plane(start, n0);
        if n0.z > 0.0 {
            t_min = t_min.max(t);
        } else {
            t_max = t_max.min(t);
        }
    }

    if parallel_to_ray(n1) {
        if n1.dot(-end) > 0.0 {
            return EMPTY_INTERVAL;
        }
    } else {
        let t = intersect_plane(end, n1);
        if n1.z < 0.0 {
            t_min = t_min.max(t);
        } else {
            t_max = t_max.min(t);
        }
    }

    (t_min, t_max)
}

/// Splits `c` at its domain midpoint with the plane through the split
/// point orthogonal to the split tangent, keeps the child the ray reaches
/// first and narrows the crop interval to it.
///
/// Returns `(both_hit, go_right)`: `both_hit` when the ray crosses the
/// plane inside the cylinder `[t0, t1]`, so the far child may still hold
/// a hit.
pub fn subdivide_partition_and_update(
    c: &mut DeltaCurve,
    t0: f32,
    t1: f32,
    t_min: &mut f32,
    t_max: &mut f32,
) -> (bool, bool) {
    let (center, t_center) = c.get_center_and_tangent();
    let split_point = (c.p + center).xyz();
    let normal = t_center.xyz();

    let (both_hit, go_right) = if parallel_to_ray(normal) {
        // The whole ray stays on the origin's side of the plane.
        (false, normal.dot(-split_point) > 0.0)
    } else {
        let t_plane = intersect_plane(split_point, normal);
        let go_right = (t_plane > t0) ^ (normal.z > 0.0);
        let both_hit = t0 < t_plane && t1 > t_plane;
        if t_plane > t0 {
            *t_max = t_max.min(t_plane);
        } else {
            *t_min = t_min.max(t_plane);
        }
        (both_hit, go_right)
    };

    c.subdivide_and_set(go_right, center, t_center);
    (both_hit, go_right)
}

fn cap_normal(c: &CubicBezier, at_start: bool) -> Vec3 {
    let candidates = if at_start {
        [c.p0 - c.p1, c.p0 - c.p2, c.p0 - c.p3]
    } else {
        [c.p3 - c.p2, c.p3 - c.p1, c.p3 - c.p0]
    };
    candidates
        .iter()
        .map(|v| v.xyz())
        .find(|v| v.length_squared() > 0.0)
        .unwrap_or(Vec3::Z)
        .normalize()
}

/// Parameter and normal of the accepted leaf hit at distance `t`.
///
/// `cur_c` is the leaf in the ray frame, `c` the world-space curve.
/// `through_crop` marks hits where the ray enters the leaf through one of
/// its crop planes rather than the cylinder wall; in an end leaf that is
/// the end cap.
pub fn calculate_intersection(
    cur_start: u32,
    cur_size: u32,
    t: f32,
    through_crop: bool,
    c: &CubicBezier,
    cur_c: &DeltaCurve,
    ray: &Ray,
) -> Intersection {
    // Project the hit point onto the leaf chord.
    let axis = cur_c.d.xyz();
    let hb = cur_c.p.xyz() - Vec3::new(0.0, 0.0, t);
    let axis_len2 = axis.dot(axis);
    let u_local = if axis_len2 > 0.0 {
        (-hb.dot(axis) / axis_len2).clamp(0.0, 1.0)
    } else {
        0.0
    };

    let (u0, u1) = get_interval(cur_start, cur_size);
    let mut u = u0 + u_local * (u1 - u0);
    if through_crop && cur_start == 0 && u_local < 0.5 {
        u = 0.0;
    } else if through_crop && cur_start + cur_size == ROOT_SIZE && u_local > 0.5 {
        u = 1.0;
    }

    if u == 0.0 || u == 1.0 {
        return Intersection {
            t,
            u,
            normal: cap_normal(c, u == 0.0),
        };
    }

    let ap = cur_c.p.xyz() + u_local * axis;
    let (frame_u, frame_v) = make_onb(ray.direction);
    let radial = t * ray.direction - ap.x * frame_u - ap.y * frame_v - ap.z * ray.direction;
    let normal = radial.try_normalize().unwrap_or(-ray.direction);
    Intersection { t, u, normal }
}

/// Nearest hit of `ray` with the fiber `c`, bisecting until nodes are no
/// larger than `min_size` (in units of 2^-23; see [`min_size_for_depth`]).
///
/// `c` must satisfy the disjointness constraints; see [`crate::constraints`].
pub fn intersect(ray: &Ray, c: &CubicBezier, min_size: u32) -> Option<Intersection> {
    intersect_probed(ray, c, min_size, &mut ())
}

/// [`intersect`] at a subdivision depth.
pub fn intersect_depth(ray: &Ray, c: &CubicBezier, depth: u32) -> Option<Intersection> {
    intersect(ray, c, min_size_for_depth(depth))
}

/// [`intersect`] reporting traversal events to `probe`.
pub fn intersect_probed<P: Probe>(
    ray: &Ray,
    c: &CubicBezier,
    min_size: u32,
    probe: &mut P,
) -> Option<Intersection> {
    let min_size = min_size.max(1);
    let c_local = transform_to_ray_frame(ray, c);
    let mut cur_c = to_delta(&c_local);

    let (t_min, t_max) = calculate_t_interval(&cur_c, ray.t_max);
    probe.plane_tests(2);
    let mut state = TraversalState::root(t_min, t_max);
    let mut hit = None;

    loop {
        probe.node(state.cur_start, state.cur_size);
        let r = calculate_conservative_radius(&cur_c);
        let (t0, t1) = intersect_cylinder(cur_c.p.xyz(), cur_c.d.xyz(), r);
        probe.cylinder_test();

        let missed = (t0, t1) == CYLINDER_MISS;
        if !missed && state.t_min <= state.t_max && t1 >= state.t_min && t0 <= state.t_max {
            if state.cur_size <= min_size {
                probe.leaf(state.cur_start, state.cur_size);
                // Entry behind the crop plane means the ray comes in through the cap.
                hit = Some((t0.max(state.t_min), t0 < state.t_min));
                break;
            }

            let (both_hit, go_right) = subdivide_partition_and_update(
                &mut cur_c,
                t0,
                t1,
                &mut state.t_min,
                &mut state.t_max,
            );
            probe.plane_tests(1);
            probe.split(both_hit);
            state.go_down(both_hit, go_right);
        } else {
            if state.bit_string == 0 {
                break;
            }
            state.jump_up();
            probe.backtrack();
            cur_c = calculate_control_points(&c_local, state.cur_start, state.cur_size);
            (state.t_min, state.t_max) = calculate_t_interval(&cur_c, ray.t_max);
            probe.plane_tests(2);
        }
    }

    hit.map(|(t, through_crop)| {
        calculate_intersection(
            state.cur_start,
            state.cur_size,
            t,
            through_crop,
            c,
            &cur_c,
            ray,
        )
    })
}

/// Delta form in the ray frame of the node `(start, size)` as reached by
/// repeated subdivision from the root, for tests and diagnostics.
pub fn descend_to(c_local: &CubicBezier, start: u32, size: u32) -> DeltaCurve {
    let mut cur = to_delta(c_local);
    let mut s = super::interval::ROOT_SIZE;
    while s > size {
        s /= 2;
        cur = cur.child(start & s != 0);
    }
    cur
}
