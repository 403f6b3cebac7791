use glam::Vec3;

/// Completes the unit vector `w` to a right-handed orthonormal basis `(u, v, w)`.
///
/// Branchless sign-copying construction. Safe at both poles, including `w = (0, 0, -1)` and a negative-zero `z`.
#[inline]
pub fn make_onb(w: Vec3) -> (Vec3, Vec3) {
    let sign = 1.0f32.copysign(w.z);
    let a = -1.0 / (sign + w.z);
    let b = w.x * w.y * a;
    let u = Vec3::new(1.0 + sign * w.x * w.x * a, sign * b, -sign * w.x);
    let v = Vec3::new(b, sign + w.y * w.y * a, -w.y);
    (u, v)
}
