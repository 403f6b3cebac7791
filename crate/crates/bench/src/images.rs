//! Renders and heatmaps with rows spread over the worker pool.

use fibertrace::render::{heatmap_row, render_row, Camera, Image, Method};
use fibertrace::scene::Scene;
use fibertrace::CubicBezier;
use rayon::prelude::*;

pub const DEFAULT_RES: (u32, u32) = (256, 256);

/// The scene camera at `res` if given, or a framing camera.
pub fn camera_for(scene: &Scene, res: Option<(u32, u32)>) -> Camera {
    match &scene.camera {
        Some(rec) => {
            let mut rec = *rec;
            if let Some((w, h)) = res {
                rec.width = w;
                rec.height = h;
            }
            Camera::from_record(&rec)
        }
        None => {
            let (w, h) = res.unwrap_or(DEFAULT_RES);
            Camera::framing(&scene.curves(), w, h)
        }
    }
}

pub fn render(curves: &[CubicBezier], cam: &Camera, method: Method, depth: u32) -> Image {
    let rows = (0..cam.height)
        .into_par_iter()
        .map(|y| render_row(curves, cam, method, depth, y))
        .collect();
    Image::from_rows(cam.width, cam.height, 3, rows)
}

pub fn heatmap(
    curves: &[CubicBezier],
    cam: &Camera,
    method: Method,
    depth: u32,
    max_count: u64,
) -> Image {
    let rows = (0..cam.height)
        .into_par_iter()
        .map(|y| heatmap_row(curves, cam, method, depth, max_count, y))
        .collect();
    Image::from_rows(cam.width, cam.height, 1, rows)
}
