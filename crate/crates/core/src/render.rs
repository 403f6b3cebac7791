//! Pinhole camera, normal-shaded renders and pruning-count heatmaps.

use std::fmt;
use std::str::FromStr;

use glam::Vec3;
use serde::{Deserialize, Serialize};

use crate::baseline::intersect_baseline_probed;
use crate::geometry::{CubicBezier, Intersection, Ray};
use crate::scene::CameraRecord;
use crate::stats::{Counters, Probe};
use crate::traversal::{intersect_probed, min_size_for_depth};

pub const BACKGROUND: [u8; 3] = [0, 0, 0];

/// Heatmap value mapped to white, matching the 0-75 color bar.
pub const DEFAULT_MAX_COUNT: u64 = 75;

/// Intersector used for a ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Stackless traversal with disjoint bounding cylinders.
    Cylinder,
    /// Box-pruning closest-point-of-approach baseline.
    Aabb,
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cylinder" => Ok(Method::Cylinder),
            "aabb" | "baseline" => Ok(Method::Aabb),
            _ => Err(format!("unknown method `{s}` (cylinder, aabb or baseline)")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Cylinder => "cylinder",
            Method::Aabb => "aabb",
        })
    }
}

impl Method {
    /// Bounding-volume tests this method spends per ray.
    pub fn pruning_tests(self, c: &Counters) -> u64 {
        match self {
            Method::Cylinder => c.cylinder_tests,
            Method::Aabb => c.aabb_tests,
        }
    }
}

/// Nearest hit over `curves`, shrinking `t_max` as fibers are hit.
pub fn trace<P: Probe>(
    curves: &[CubicBezier],
    ray: &Ray,
    method: Method,
    depth: u32,
    probe: &mut P,
) -> Option<Intersection> {
    let mut ray = *ray;
    let mut best = None;
    for c in curves {
        let hit = match method {
            Method::Cylinder => intersect_probed(&ray, c, min_size_for_depth(depth), probe),
            Method::Aabb => intersect_baseline_probed(&ray, c, depth, probe),
        };
        if let Some(h) = hit {
            ray = ray.with_t_max(h.t);
            best = Some(h);
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Camera {
    pub origin: Vec3,
    forward: Vec3,
    right: Vec3,
    up: Vec3,
    tan_half: f32,
    pub width: u32,
    pub height: u32,
}

impl Camera {
    pub fn new(
        origin: Vec3,
        look_at: Vec3,
        up: Vec3,
        fov_deg: f32,
        width: u32,
        height: u32,
    ) -> Self {
        let forward = (look_at - origin).normalize();
        let right = forward.cross(up).normalize();
        let up = right.cross(forward);
        Camera {
            origin,
            forward,
            right,
            up,
            tan_half: (0.5 * fov_deg.to_radians()).tan(),
            width,
            height,
        }
    }

    pub fn from_record(r: &CameraRecord) -> Self {
        Self::new(
            r.origin.into(),
            r.look_at.into(),
            r.up.into(),
            r.fov_deg,
            r.width,
            r.height,
        )
    }

    /// Looks down `+z` at the bounding box of `curves`, framing all of them.
    pub fn framing(curves: &[CubicBezier], width: u32, height: u32) -> Self {
        let fov = 40.0f32;
        if curves.is_empty() {
            return Self::new(
                Vec3::new(0.0, 0.0, -5.0),
                Vec3::ZERO,
                Vec3::Y,
                fov,
                width,
                height,
            );
        }
        let mut lo = Vec3::splat(f32::MAX);
        let mut hi = Vec3::splat(f32::MIN);
        for c in curves {
            let r = c.max_radius();
            for p in c.points() {
                lo = lo.min(p.truncate() - r);
                hi = hi.max(p.truncate() + r);
            }
        }
        let center = 0.5 * (lo + hi);
        let aspect = width as f32 / height as f32;
        let half = 0.5 * (hi - lo);
        let extent = half.y.max(half.x / aspect).max(1e-3);
        let dist = 1.15 * extent / (0.5 * fov.to_radians()).tan() + half.z;
        Self::new(center - Vec3::Z * dist, center, Vec3::Y, fov, width, height)
    }

    /// Primary ray through the center of pixel `(x, y)`, `y` pointing down.
    pub fn ray(&self, x: u32, y: u32) -> Ray {
        let aspect = self.width as f32 / self.height as f32;
        let sx = (2.0 * (x as f32 + 0.5) / self.width as f32 - 1.0) * self.tan_half * aspect;
        let sy = (1.0 - 2.0 * (y as f32 + 0.5) / self.height as f32) * self.tan_half;
        Ray::unbounded(self.origin, self.forward + sx * self.right + sy * self.up)
    }
}

/// `n * 0.5 + 0.5` as 8-bit RGB.
pub fn shade(hit: Option<&Intersection>) -> [u8; 3] {
    match hit {
        None => BACKGROUND,
        Some(h) => {
            let c = h.normal * 0.5 + Vec3::splat(0.5);
            c.to_array()
                .map(|v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
        }
    }
}

/// Linear map of a pruning count onto `0..=255`, saturating at `max_count`.
pub fn heat(count: u64, max_count: u64) -> u8 {
    let max_count = max_count.max(1);
    ((count.min(max_count) * 255 + max_count / 2) / max_count) as u8
}

/// Hit and per-ray counters for one pixel.
pub fn probe_pixel(
    curves: &[CubicBezier],
    cam: &Camera,
    method: Method,
    depth: u32,
    x: u32,
    y: u32,
) -> (Option<Intersection>, Counters) {
    let mut n = Counters::default();
    let hit = trace(curves, &cam.ray(x, y), method, depth, &mut n);
    (hit, n)
}

pub fn render_row(
    curves: &[CubicBezier],
    cam: &Camera,
    method: Method,
    depth: u32,
    y: u32,
) -> Vec<u8> {
    (0..cam.width)
        .flat_map(|x| {
            let hit = trace(curves, &cam.ray(x, y), method, depth, &mut ());
            shade(hit.as_ref())
        })
        .collect()
}

pub fn heatmap_row(
    curves: &[CubicBezier],
    cam: &Camera,
    method: Method,
    depth: u32,
    max_count: u64,
    y: u32,
) -> Vec<u8> {
    (0..cam.width)
        .map(|x| {
            let (_, n) = probe_pixel(curves, cam, method, depth, x, y);
            heat(method.pruning_tests(&n), max_count)
        })
        .collect()
}

/// An 8-bit image with one (gray) or three (RGB) channels per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: u32,
    pub height: u32,
    pub channels: u8,
    pub data: Vec<u8>,
}

impl Image {
    pub fn from_rows(width: u32, height: u32, channels: u8, rows: Vec<Vec<u8>>) -> Self {
        let data: Vec<u8> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), (width * height) as usize * channels as usize);
        Image {
            width,
            height,
            channels,
            data,
        }
    }

    /// Binary PGM (`P5`) or PPM (`P6`) depending on the channel count.
    pub fn to_netpbm(&self) -> Vec<u8> {
        let magic = if self.channels == 1 { "P5" } else { "P6" };
        let mut out = format!("{magic}\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.data);
        out
    }
}

pub fn render_image(curves: &[CubicBezier], cam: &Camera, method: Method, depth: u32) -> Image {
    let rows = (0..cam.height)
        .map(|y| render_row(curves, cam, method, depth, y))
        .collect();
    Image::from_rows(cam.width, cam.height, 3, rows)
}

pub fn heatmap_image(
    curves: &[CubicBezier],
    cam: &Camera,
    method: Method,
    depth: u32,
    max_count: u64,
) -> Image {
    let rows = (0..cam.height)
        .map(|y| heatmap_row(curves, cam, method, depth, max_count, y))
        .collect();
    Image::from_rows(cam.width, cam.height, 1, rows)
}
