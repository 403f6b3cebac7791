//! Precise ray intersection with hair and fur fibers: circular sweep
//! surfaces of varying radius along cubic Bezier curves.
//!
//! [`traversal`] is the intersector. [`constraints`] decides which curves
//! it supports and splits the rest, [`baseline`] is a box-pruning
//! comparator and [`oracle`] a double-precision tessellation used as
//! ground truth. [`scene`] and [`render`] provide scene files, cameras
//! and image output for the benchmark front end.

pub mod baseline;
pub mod constraints;
pub mod geometry;
pub mod oracle;
pub mod poly;
pub mod render;
pub mod sample;
pub mod scene;
pub mod stats;
pub mod traversal;

pub use geometry::{CubicBezier, Intersection, Ray};
pub use stats::{Counters, Probe};
pub use traversal::{intersect, intersect_depth, intersect_probed};
