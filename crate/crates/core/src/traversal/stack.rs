//! Explicit-stack form of the traversal: deferred far children are pushed
//! as `(start, size)` and rebuilt from the curve when popped. Visits the
//! same nodes in the same order as the stackless loop.

use glam::Vec4Swizzles;

use super::delta::to_delta;
use super::intersect::{
    calculate_conservative_radius, calculate_control_points, calculate_intersection,
    calculate_t_interval, subdivide_partition_and_update,
};
use super::interval::ROOT_SIZE;
use crate::geometry::{
    intersect_cylinder, transform_to_ray_frame, CubicBezier, Intersection, Ray, CYLINDER_MISS,
};
use crate::stats::Probe;

pub fn intersect_stack_probed<P: Probe>(
    ray: &Ray,
    c: &CubicBezier,
    min_size: u32,
    probe: &mut P,
) -> Option<Intersection> {
    let min_size = min_size.max(1);
    let c_local = transform_to_ray_frame(ray, c);
    let mut cur_c = to_delta(&c_local);
    let (mut t_min, mut t_max) = calculate_t_interval(&cur_c, ray.t_max);
    let (mut start, mut size) = (0u32, ROOT_SIZE);
    let mut pending: Vec<(u32, u32)> = Vec::new();

    loop {
        probe.node(start, size);
        let r = calculate_conservative_radius(&cur_c);
        let (t0, t1) = intersect_cylinder(cur_c.p.xyz(), cur_c.d.xyz(), r);
        let missed = (t0, t1) == CYLINDER_MISS;

        if !missed && t_min <= t_max && t1 >= t_min && t0 <= t_max {
            if size <= min_size {
                probe.leaf(start, size);
                let t = t0.max(t_min);
                return Some(calculate_intersection(
                    start,
                    size,
                    t,
                    t0 < t_min,
                    c,
                    &cur_c,
                    ray,
                ));
            }
            let (both_hit, go_right) =
                subdivide_partition_and_update(&mut cur_c, t0, t1, &mut t_min, &mut t_max);
            size /= 2;
            let (near, far) = if go_right {
                (start + size, start)
            } else {
                (start, start + size)
            };
            if both_hit {
                pending.push((far, size));
            }
            start = near;
        } else {
            let (s, z) = pending.pop()?;
            (start, size) = (s, z);
            cur_c = calculate_control_points(&c_local, start, size);
            (t_min, t_max) = calculate_t_interval(&cur_c, ray.t_max);
        }
    }
}
