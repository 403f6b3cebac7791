//! Vector math, ray frames, cubic Bezier evaluation and the unit-ray
//! primitive tests the traversal is built on.
//!
//! Every routine in [`primitives`] assumes the ray-centric frame: the ray
//! starts in the origin and runs along `+z`, so dot products with the ray
//! direction collapse to `z` components.

mod bezier;
mod onb;
mod primitives;
mod ray;

pub use bezier::{transform_to_ray_frame, CubicBezier};
pub use onb::make_onb;
pub use primitives::{
    dist_2points_line, intersect_cylinder, intersect_plane, CYLINDER_CONTAINED, CYLINDER_MISS,
};
pub use ray::{Intersection, Ray};

pub use glam::{Vec3, Vec4};
