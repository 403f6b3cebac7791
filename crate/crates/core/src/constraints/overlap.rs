use glam::DVec3;

use super::positions;
use crate::geometry::CubicBezier;
use crate::poly::Poly;

type VecPoly = [Poly; 3];

fn vec_poly(coeffs: &[DVec3]) -> VecPoly {
    [0, 1, 2].map(|k| Poly(coeffs.iter().map(|c| c[k]).collect()))
}

fn dot(a: &VecPoly, b: &VecPoly) -> Poly {
    let xy = &(&a[0] * &b[0]) + &(&a[1] * &b[1]);
    &xy + &(&a[2] * &b[2])
}

fn dot_const(a: &VecPoly, v: DVec3) -> Poly {
    let xy = &a[0].scale(v.x) + &a[1].scale(v.y);
    &xy + &a[2].scale(v.z)
}

/// End tangent, falling back to longer spans when control points coincide.
fn end_tangent(p: &[DVec3; 4]) -> Option<DVec3> {
    [p[3] - p[2], p[3] - p[1], p[3] - p[0]]
        .into_iter()
        .find(|v| v.length_squared() > 0.0)
}

fn eval_point(p: &[DVec3; 4], u: f64) -> DVec3 {
    let v = 1.0 - u;
    v * v * v * p[0] + 3.0 * u * v * v * p[1] + 3.0 * u * u * v * p[2] + u * u * u * p[3]
}

fn eval_tangent(p: &[DVec3; 4], u: f64) -> DVec3 {
    let v = 1.0 - u;
    v * v * (p[1] - p[0]) + 2.0 * u * v * (p[2] - p[1]) + u * u * (p[3] - p[2])
}

/// Signed distance by which the surface point at `u` that lies closest to
/// the end plane (through `p3`, orthogonal to the end tangent) reaches
/// beyond it, for a constant radius `r_bar`. Positive means crossing.
///
/// The displacement is the end tangent made orthogonal to the curve
/// tangent at `u`, scaled to `r_bar`; its extent along the end tangent is
/// `r_bar` times the sine of the angle between the two tangents.
pub fn end_plane_excess(c: &CubicBezier, r_bar: f64, u: f64) -> f64 {
    let p = positions(c);
    let Some(t1) = end_tangent(&p) else {
        return 0.0;
    };
    let t1n = t1.normalize();
    let behind = (eval_point(&p, u) - p[3]).dot(t1n);
    let tu = eval_tangent(&p, u);
    let sin = if tu.length_squared() > 1e-24 * t1.length_squared() {
        tu.normalize().cross(t1n).length()
    } else {
        // cusp: the cross-section can face any direction
        1.0
    };
    behind + r_bar * sin
}

/// Whether the surface can cross the end plane at `p3`.
///
/// With `H(u) = <p3 - p(u), t1>`, `T(u) = |t(u)|^2` and
/// `S(u) = |t(u)|^2 |t1|^2 - <t(u), t1>^2`, the excess is positive exactly
/// where `H < 0`, or `H >= 0` and `Q = r_bar^2 S - H^2 T > 0`. The roots of
/// `H` and `Q` in `[0, 1]` split the domain into pieces of constant sign;
/// one evaluation per piece decides.
fn crosses_end_plane(c: &CubicBezier, r_bar: f64) -> bool {
    let p = positions(c);
    let Some(t1) = end_tangent(&p) else {
        return false;
    };

    // power basis of the curve and of its derivative divided by three
    let a = vec_poly(&[
        p[0],
        3.0 * (p[1] - p[0]),
        3.0 * (p[0] - 2.0 * p[1] + p[2]),
        p[3] - 3.0 * p[2] + 3.0 * p[1] - p[0],
    ]);
    let t = vec_poly(&[
        p[1] - p[0],
        2.0 * (p[2] - 2.0 * p[1] + p[0]),
        p[3] - 3.0 * p[2] + 3.0 * p[1] - p[0],
    ]);

    let h = &Poly::constant(p[3].dot(t1)) - &dot_const(&a, t1);
    let tt = dot(&t, &t);
    let ct = dot_const(&t, t1);
    let s = &tt.scale(t1.length_squared()) - &(&ct * &ct);
    let q = &s.scale(r_bar * r_bar) - &(&(&h * &h) * &tt);

    let mut knots = vec![0.0];
    knots.extend(h.roots_in(0.0, 1.0));
    knots.extend(q.roots_in(0.0, 1.0));
    knots.push(1.0);
    knots.sort_by(f64::total_cmp);

    let extent = p.iter().map(|x| x.distance(p[0])).fold(0.0, f64::max);
    let tol = 1e-10 * extent.max(r_bar);
    knots.windows(2).any(|w| {
        let mid = 0.5 * (w[0] + w[1]);
        w[1] > w[0] && end_plane_excess(c, r_bar, mid) > tol
    }) || end_plane_excess(c, r_bar, 0.0) > tol
}

/// True when a fiber of maximum radius `r_bar` along `c` reaches across
/// the plane at either end, so the end caps would crop valid surface.
pub fn check_fiber_overlap(c: &CubicBezier, r_bar: f64) -> bool {
    crosses_end_plane(c, r_bar) || crosses_end_plane(&c.reversed(), r_bar)
}
