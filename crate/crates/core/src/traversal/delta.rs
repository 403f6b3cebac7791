use glam::Vec4;

use crate::geometry::CubicBezier;

/// Cubic Bezier in the `(p, d, t0, t1)` form used by the traversal:
/// first point, chord, start tangent and end tangent.
///
/// The chord and tangents are kept as differences so that deep
/// subdivision levels never subtract nearly equal control points.
/// The `w` components carry the matching radius differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaCurve {
    /// `p0`
    pub p: Vec4,
    /// `p3 - p0`
    pub d: Vec4,
    /// `p1 - p0`
    pub t0: Vec4,
    /// `p3 - p2`
    pub t1: Vec4,
}

/// Converts `{p0, p1, p2, p3}` into `{p, d, t0, t1}`.
#[inline]
pub fn to_delta(c: &CubicBezier) -> DeltaCurve {
    DeltaCurve {
        p: c.p0,
        d: c.p3 - c.p0,
        t0: c.p1 - c.p0,
        t1: c.p3 - c.p2,
    }
}

impl From<&CubicBezier> for DeltaCurve {
    fn from(c: &CubicBezier) -> Self {
        to_delta(c)
    }
}

impl DeltaCurve {
    /// Reconstructs the control points.
    pub fn to_bezier(&self) -> CubicBezier {
        CubicBezier::new(
            self.p,
            self.p + self.t0,
            self.p + self.d - self.t1,
            self.p + self.d,
        )
    }

    /// Offset of the domain midpoint from `p`, and the tangent there scaled
    /// to the half domain.
    #[inline]
    pub fn get_center_and_tangent(&self) -> (Vec4, Vec4) {
        let center = 0.375 * self.t0 + 0.5 * self.d - 0.375 * self.t1;
        let tangent = -0.125 * self.t0 + 0.25 * self.d - 0.125 * self.t1;
        (center, tangent)
    }

    /// Replaces `self` by its left or right half. `center` and `t_center`
    /// must come from [`Self::get_center_and_tangent`] on `self`.
    #[inline]
    pub fn subdivide_and_set(&mut self, go_right: bool, center: Vec4, t_center: Vec4) {
        if go_right {
            self.p += center;
            self.d -= center;
            self.t0 = t_center;
            self.t1 *= 0.5;
        } else {
            self.d = center;
            self.t0 *= 0.5;
            self.t1 = t_center;
        }
    }

    /// The left (`go_right == false`) or right half as a new curve.
    pub fn child(&self, go_right: bool) -> DeltaCurve {
        let (center, t_center) = self.get_center_and_tangent();
        let mut c = *self;
        c.subdivide_and_set(go_right, center, t_center);
        c
    }
}
