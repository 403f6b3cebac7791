use glam::Vec3;

/// Returned by [`intersect_cylinder`] when the unit ray misses.
pub const CYLINDER_MISS: (f32, f32) = (f32::MAX, f32::MAX);
/// Returned by [`intersect_cylinder`] when the ray runs inside an axis-parallel cylinder.
pub const CYLINDER_CONTAINED: (f32, f32) = (-f32::MAX, f32::MAX);

/// Axes whose lateral extent falls below this fraction of their squared
/// length are treated as parallel to the ray.
const PARALLEL_AXIS_EPS: f32 = 1e-12;

/// Ray parameter where the unit ray crosses the plane through `p` with normal `n`.
///
/// `n.z == 0` yields an infinity (or NaN when `p` lies on the plane); callers guard.
#[inline]
pub fn intersect_plane(p: Vec3, n: Vec3) -> f32 {
    n.dot(p) / n.z
}

/// Entry and exit distances of the unit ray through the infinite cylinder
/// of radius `r` whose axis passes through `o` along `a`.
///
/// `a` need not be normalized. Misses return [`CYLINDER_MISS`]; an axis
/// parallel to the ray with the ray inside returns [`CYLINDER_CONTAINED`].
#[inline]
pub fn intersect_cylinder(o: Vec3, a: Vec3, r: f32) -> (f32, f32) {
    let d = a.x * o.y - a.y * o.x;
    let g = a.x * a.x + a.y * a.y;
    if g <= PARALLEL_AXIS_EPS * (g + a.z * a.z) {
        return if o.x * o.x + o.y * o.y < r * r {
            CYLINDER_CONTAINED
        } else {
            CYLINDER_MISS
        };
    }

    let h = 1.0 / g;
    let e = r * r - d * d * h;
    if e < 0.0 {
        return CYLINDER_MISS;
    }

    let t_cpa = o.z - a.z * (a.x * o.x + a.y * o.y) * h;
    let s = (e * (a.z * a.z + g) * h).sqrt();
    (t_cpa - s, t_cpa + s)
}

/// Larger of the distances of `p` and `q` to the line through the origin along `d`.
///
/// A zero `d` degenerates to the larger distance from the origin.
#[inline]
pub fn dist_2points_line(p: Vec3, q: Vec3, d: Vec3) -> f32 {
    let c = d.dot(d);
    if c == 0.0 {
        return p.length().max(q.length());
    }
    let bp = p.dot(d) / c;
    let p_perp = p - bp * d;
    let bq = q.dot(d) / c;
    let q_perp = q - bq * d;
    p_perp.length_squared().max(q_perp.length_squared()).sqrt()
}
