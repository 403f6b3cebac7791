//! Stackless recursive bisection with disjoint bounding cylinders.
//!
//! The curve is moved into the ray frame once. Each iteration bounds the
//! current node by a cylinder along its chord, cropped by the planes at
//! its ends. A hit node is split by the plane through its midpoint; the
//! child the ray reaches first is entered and, if the ray also crosses
//! the plane inside the cylinder, a single bit records that the other
//! child is pending. Backtracking rebuilds the pending node from the
//! curve instead of popping a stack. Since children are disjoint and
//! visited near to far, the first accepted leaf is the nearest hit.

mod delta;
mod intersect;
mod interval;
mod stack;

pub use delta::{to_delta, DeltaCurve};
pub use intersect::{
    calculate_conservative_radius, calculate_control_points, calculate_intersection,
    calculate_t_interval, descend_to, intersect, intersect_depth, intersect_probed,
    subdivide_partition_and_update,
};
pub use interval::{get_interval, min_size_for_depth, TraversalState, MAX_DEPTH, ROOT_SIZE};
pub use stack::intersect_stack_probed;
