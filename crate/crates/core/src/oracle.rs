//! Double-precision ground truth: the sweep surface tessellated into cone
//! frusta with end discs, intersected analytically.
//!
//! Consecutive frusta leave a thin wedge open on the outer side of a bend,
//! so every interior joint also carries a sphere of the joint radius,
//! restricted to that wedge.

use glam::{DVec3, DVec4};

use crate::geometry::{make_onb, transform_to_ray_frame, CubicBezier, Intersection, Ray};
use crate::traversal::{calculate_control_points, get_interval, min_size_for_depth, ROOT_SIZE};

/// Default number of frusta along the curve.
pub const DEFAULT_SEGMENTS: usize = 1 << 16;

const BLOCK: usize = 64;

/// Truncated cone between the circles of radius `ra` at `a` and `rb` at `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeFrustum {
    pub a: DVec3,
    pub b: DVec3,
    pub ra: f64,
    pub rb: f64,
}

/// Hit on a frustum: distance, fraction along the axis and outward normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrustumHit {
    pub t: f64,
    pub s: f64,
    pub normal: DVec3,
}

impl ConeFrustum {
    /// Nearest lateral-surface hit with `t` in `(t_lo, t_hi)`.
    pub fn intersect(&self, o: DVec3, d: DVec3, t_lo: f64, t_hi: f64) -> Option<FrustumHit> {
        let axis = self.b - self.a;
        let h = axis.length();
        if h == 0.0 {
            return None;
        }
        let w = axis / h;
        let k = (self.rb - self.ra) / h;
        let oa = o - self.a;
        let z0 = oa.dot(w);
        let dz = d.dot(w);
        let oa_perp = oa - z0 * w;
        let d_perp = d - dz * w;
        let r0 = self.ra + k * z0;

        let qa = d_perp.length_squared() - k * k * dz * dz;
        let qb = 2.0 * (oa_perp.dot(d_perp) - k * dz * r0);
        let qc = oa_perp.length_squared() - r0 * r0;

        let mut roots = [f64::NAN; 2];
        if qa.abs() <= 1e-300 {
            if qb != 0.0 {
                roots[0] = -qc / qb;
            }
        } else {
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                return None;
            }
            let sq = disc.sqrt();
            let q = -0.5 * (qb + sq.copysign(qb));
            roots = [q / qa, if q != 0.0 { qc / q } else { q / qa }];
        }
        if roots[0] > roots[1] {
            roots.swap(0, 1);
        }

        for t in roots {
            if !(t > t_lo && t < t_hi) {
                continue;
            }
            let z = z0 + t * dz;
            if !(0.0..=h).contains(&z) || self.ra + k * z < 0.0 {
                continue;
            }
            let radial = (oa_perp + t * d_perp)
                .try_normalize()
                .unwrap_or(-d_perp.normalize_or_zero());
            let normal = (radial - k * w).normalize();
            return Some(FrustumHit {
                t,
                s: z / h,
                normal,
            });
        }
        None
    }
}

/// Nearest hit with the sphere of radius `r` around `c` in `(t_lo, t_hi)`.
fn intersect_sphere(
    c: DVec3,
    r: f64,
    o: DVec3,
    d: DVec3,
    t_lo: f64,
    t_hi: f64,
) -> Option<(f64, DVec3)> {
    let oc = o - c;
    let b = oc.dot(d);
    let cc = oc.length_squared() - r * r;
    let disc = b * b - cc;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // Larger-magnitude root first, the other from the product of roots.
    let q = -b - sq.copysign(b);
    let pair = if q != 0.0 { [q, cc / q] } else { [0.0, 0.0] };
    let (t0, t1) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
    [t0, t1]
        .into_iter()
        .find(|&t| t > t_lo && t < t_hi)
        .map(|t| (t, (oc + t * d) / r))
}

/// Oracle hit with the cosine between ray and normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleHit {
    pub t: f64,
    pub u: f64,
    pub normal: DVec3,
    pub cos_incidence: f64,
}

impl OracleHit {
    pub fn to_intersection(&self) -> Intersection {
        Intersection {
            t: self.t as f32,
            u: self.u as f32,
            normal: self.normal.as_vec3(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Block {
    lo: DVec3,
    hi: DVec3,
}

/// A fiber tessellated into `segments` frusta at `u_i = i / segments`.
#[derive(Debug, Clone)]
pub struct Tessellation {
    points: Vec<DVec4>,
    blocks: Vec<Block>,
    start_tangent: DVec3,
    end_tangent: DVec3,
}

fn eval64(c: &[DVec4; 4], u: f64) -> DVec4 {
    let v = 1.0 - u;
    c[0] * (v * v * v) + c[1] * (3.0 * v * v * u) + c[2] * (3.0 * v * u * u) + c[3] * (u * u * u)
}

fn end_direction(candidates: [DVec4; 3]) -> DVec3 {
    candidates
        .iter()
        .map(|p| p.truncate())
        .find(|p| p.length_squared() > 0.0)
        .unwrap_or(DVec3::Z)
        .normalize()
}

impl Tessellation {
    pub fn new(c: &CubicBezier, segments: usize) -> Self {
        assert!(segments >= 2, "need at least two segments");
        let cp = c.points().map(|p| p.as_dvec4());
        let points: Vec<DVec4> = (0..=segments)
            .map(|i| eval64(&cp, i as f64 / segments as f64))
            .collect();

        let blocks = points
            .windows(2)
            .collect::<Vec<_>>()
            .chunks(BLOCK)
            .map(|chunk| {
                let mut lo = DVec3::splat(f64::MAX);
                let mut hi = DVec3::splat(f64::MIN);
                for w in chunk {
                    for p in *w {
                        lo = lo.min(p.truncate() - p.w);
                        hi = hi.max(p.truncate() + p.w);
                    }
                }
                Block { lo, hi }
            })
            .collect();

        Self {
            points,
            blocks,
            start_tangent: end_direction([cp[1] - cp[0], cp[2] - cp[0], cp[3] - cp[0]]),
            end_tangent: end_direction([cp[3] - cp[2], cp[3] - cp[1], cp[3] - cp[0]]),
        }
    }

    pub fn segments(&self) -> usize {
        self.points.len() - 1
    }

    pub fn frustum(&self, i: usize) -> ConeFrustum {
        let (a, b) = (self.points[i], self.points[i + 1]);
        ConeFrustum {
            a: a.truncate(),
            b: b.truncate(),
            ra: a.w,
            rb: b.w,
        }
    }

    /// Whether `x` lies past the slab of the frustum ending at joint `i` and
    /// before the slab of the one starting there: the gap the joint sphere fills.
    fn in_joint_wedge(&self, i: usize, x: DVec3) -> bool {
        let [prev, joint, next] = [i - 1, i, i + 1].map(|k| self.points[k].truncate());
        let rel = x - joint;
        rel.dot(joint - prev) >= 0.0 && rel.dot(next - joint) <= 0.0
    }

    /// Nearest hit in `(0, t_max)`, caps included.
    pub fn intersect_ray(&self, o: DVec3, d: DVec3, t_max: f64) -> Option<OracleHit> {
        let n = self.segments() as f64;
        let mut best_t = t_max;
        let mut best: Option<(f64, f64, DVec3)> = None;
        let inv = d.recip();

        for (bi, block) in self.blocks.iter().enumerate() {
            if !slab_hit(block, o, inv, best_t) {
                continue;
            }
            let first = bi * BLOCK;
            let last = (first + BLOCK).min(self.segments());
            for i in first..last {
                if let Some(h) = self.frustum(i).intersect(o, d, 0.0, best_t) {
                    best_t = h.t;
                    best = Some((h.t, (i as f64 + h.s) / n, h.normal));
                }
                if i > 0 {
                    let j = self.points[i];
                    if let Some((t, normal)) =
                        intersect_sphere(j.truncate(), j.w, o, d, 0.0, best_t)
                    {
                        if self.in_joint_wedge(i, o + t * d) {
                            best_t = t;
                            best = Some((t, i as f64 / n, normal));
                        }
                    }
                }
            }
        }

        let caps = [
            (self.points[0], -self.start_tangent, 0.0),
            (self.points[self.segments()], self.end_tangent, 1.0),
        ];
        for (center, normal, u) in caps {
            let denom = normal.dot(d);
            if denom == 0.0 {
                continue;
            }
            let t = normal.dot(center.truncate() - o) / denom;
            if t > 0.0
                && t < best_t
                && (o + t * d).distance_squared(center.truncate()) <= center.w * center.w
            {
                best_t = t;
                best = Some((t, u, normal));
            }
        }

        best.map(|(t, u, normal)| OracleHit {
            t,
            u,
            normal,
            cos_incidence: normal.dot(d).abs(),
        })
    }

    pub fn intersect(&self, ray: &Ray) -> Option<OracleHit> {
        let t_max = if ray.t_max == f32::MAX {
            f64::INFINITY
        } else {
            f64::from(ray.t_max)
        };
        self.intersect_ray(
            ray.origin.as_dvec3(),
            ray.direction.as_dvec3().normalize(),
            t_max,
        )
    }

    /// Smallest gap between the ray (`t >= 0`) and the surface, negative
    /// when the ray line enters it. Measured axis-to-ray minus radius per frustum.
    pub fn clearance(&self, ray: &Ray) -> f64 {
        let o = ray.origin.as_dvec3();
        let d = ray.direction.as_dvec3().normalize();
        self.points
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let (t, s) = closest_ray_segment(o, d, a.truncate(), b.truncate());
                let p = o + t * d;
                let q = a.truncate().lerp(b.truncate(), s);
                p.distance(q) - (a.w + s * (b.w - a.w))
            })
            .fold(f64::MAX, f64::min)
    }
}

#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn slab_hit(b: &Block, o: DVec3, inv: DVec3, t_max: f64) -> bool {
    let t0 = (b.lo - o) * inv;
    let t1 = (b.hi - o) * inv;
    let near = t0.min(t1);
    let far = t0.max(t1);
    let enter = near.max_element().max(0.0);
    let exit = far.min_element().min(t_max);
    // NaN from 0 * inf on a slab boundary keeps the block.
    !(enter > exit)
}

/// Closest points between the ray `o + t d` (`t >= 0`) and segment `[a, b]`.
fn closest_ray_segment(o: DVec3, d: DVec3, a: DVec3, b: DVec3) -> (f64, f64) {
    let e = b - a;
    let r = o - a;
    let ee = e.dot(e);
    if ee == 0.0 {
        return (d.dot(a - o).max(0.0), 0.0);
    }
    let de = d.dot(e);
    let dr = d.dot(r);
    let er = e.dot(r);
    let denom = ee - de * de;
    let mut s = if denom > 1e-300 {
        ((er - de * dr) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = (s * de - dr).max(0.0);
    s = ((t * de + er) / ee).clamp(0.0, 1.0);
    t = (s * de - dr).max(0.0);
    (t, s)
}

/// Largest lateral distance, in the frame of `ray`, between the exact curve
/// (in double precision) and the single-precision leaf chords the traversal
/// builds at `depth`, over `leaves` evenly spaced leaves.
pub fn chord_deviation(ray: &Ray, c: &CubicBezier, depth: u32, leaves: u32) -> f64 {
    use glam::Vec4Swizzles;
    let size = min_size_for_depth(depth).max(1);
    let count = ROOT_SIZE / size;
    let c_local = transform_to_ray_frame(ray, c);
    let (fu, fv) = make_onb(ray.direction);
    let frame = [fu, fv, ray.direction].map(|v| v.as_dvec3());
    let origin = ray.origin.as_dvec3();
    let cp = c.points().map(|p| p.as_dvec4());
    let to_local = |p: DVec3| {
        let q = p - origin;
        DVec3::new(q.dot(frame[0]), q.dot(frame[1]), q.dot(frame[2]))
    };
    let leaves = leaves.clamp(1, count);
    let mut worst = 0.0f64;
    for k in 0..leaves {
        let start = (u64::from(k) * u64::from(count) / u64::from(leaves)) as u32 * size;
        let leaf = calculate_control_points(&c_local, start, size);
        let a = leaf.p.xyz().as_dvec3();
        let d = leaf.d.xyz().as_dvec3();
        let (u0, u1) = get_interval(start, size);
        for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let u = f64::from(u0) + s * (f64::from(u1) - f64::from(u0));
            let rel = to_local(eval64(&cp, u).truncate()) - a;
            let dd = d.length_squared();
            let lateral = if dd > 0.0 {
                rel - rel.dot(d) / dd * d
            } else {
                rel
            };
            worst = worst.max(lateral.length());
        }
    }
    worst
}

/// Entry and exit of a ray through an infinite cylinder in the unreduced
/// form: shortest distance between the ray line and the axis, then the
/// half chord along the ray. `None` on a miss or a parallel axis.
pub fn cylinder_unreduced(
    origin: DVec3,
    dir: DVec3,
    base: DVec3,
    axis: DVec3,
    r: f64,
) -> Option<(f64, f64)> {
    let a = axis.normalize();
    let rc = origin - base;
    let n = dir.cross(a);
    let ln = n.length();
    if ln == 0.0 {
        return None;
    }
    let n = n / ln;
    let d = rc.dot(n).abs();
    if d > r {
        return None;
    }
    let t = -rc.cross(a).dot(n) / ln;
    let o = n.cross(a).normalize();
    let s = ((r * r - d * d).sqrt() / dir.dot(o)).abs();
    Some((t - s, t + s))
}

/// Nearest hit of `ray` with the tessellated fiber.
pub fn oracle_intersect(ray: &Ray, c: &CubicBezier, segments: usize) -> Option<OracleHit> {
    Tessellation::new(c, segments).intersect(ray)
}
