//! Browser bindings: shaded renders, pruning heatmaps and constraint checks
//! over a JSON scene. Images come back as RGBA bytes for a canvas.

use fibertrace::constraints::check;
use fibertrace::render::{heat, probe_pixel, shade, Camera, Method};
use fibertrace::scene::Scene;
use fibertrace::CubicBezier;
use wasm_bindgen::prelude::*;

const MAX_SIDE: u32 = 2048;

fn camera(scene: &Scene, width: u32, height: u32) -> Result<Camera, String> {
    if !(1..=MAX_SIDE).contains(&width) || !(1..=MAX_SIDE).contains(&height) {
        return Err(format!(
            "image size {width}x{height} outside 1..={MAX_SIDE}"
        ));
    }
    Ok(match &scene.camera {
        Some(rec) => {
            let mut rec = *rec;
            rec.width = width;
            rec.height = height;
            Camera::from_record(&rec)
        }
        None => Camera::framing(&scene.curves(), width, height),
    })
}

fn parse(scene_json: &str, method: &str) -> Result<(Scene, Method), String> {
    let scene = Scene::parse(scene_json).map_err(|e| e.to_string())?;
    Ok((scene, method.parse()?))
}

fn for_each_pixel(cam: &Camera, mut f: impl FnMut(u32, u32) -> [u8; 3]) -> Vec<u8> {
    let mut out = Vec::with_capacity((cam.width * cam.height * 4) as usize);
    for y in 0..cam.height {
        for x in 0..cam.width {
            out.extend_from_slice(&f(x, y));
            out.push(255);
        }
    }
    out
}

pub fn render_pixels(
    scene_json: &str,
    method: &str,
    depth: u32,
    width: u32,
    height: u32,
) -> Result<Vec<u8>, String> {
    let (scene, method) = parse(scene_json, method)?;
    let cam = camera(&scene, width, height)?;
    let curves = scene.curves();
    let depth = depth.clamp(1, 23);
    Ok(for_each_pixel(&cam, |x, y| {
        shade(probe_pixel(&curves, &cam, method, depth, x, y).0.as_ref())
    }))
}

/// Black to red to yellow to white, like a blackbody ramp.
fn ramp(v: u8) -> [u8; 3] {
    let t = u32::from(v) * 3;
    let ch = |lo: u32| (t.saturating_sub(lo).min(255)) as u8;
    [ch(0), ch(255), ch(510)]
}

pub fn heatmap_pixels(
    scene_json: &str,
    method: &str,
    depth: u32,
    width: u32,
    height: u32,
    max_count: u32,
) -> Result<Vec<u8>, String> {
    let (scene, method) = parse(scene_json, method)?;
    let cam = camera(&scene, width, height)?;
    let curves = scene.curves();
    let depth = depth.clamp(1, 23);
    Ok(for_each_pixel(&cam, |x, y| {
        let (_, n) = probe_pixel(&curves, &cam, method, depth, x, y);
        ramp(heat(method.pruning_tests(&n), u64::from(max_count)))
    }))
}

/// Constraint report for the flat `[x, y, z, r] x 4` control points.
pub fn check_points(points: &[f32]) -> Result<String, String> {
    let arr: [f32; 16] = points
        .try_into()
        .map_err(|_| format!("expected 16 numbers, got {}", points.len()))?;
    let c = CubicBezier::from_array(std::array::from_fn(|i| {
        std::array::from_fn(|j| arr[4 * i + j])
    }));
    let report = check(&c);
    let terms: Vec<String> = report
        .violated_terms
        .iter()
        .map(|t| format!("\"{t}\""))
        .collect();
    Ok(format!(
        "{{\"satisfied\":{},\"violated_terms\":[{}],\"overlap_flagged\":{}}}",
        report.satisfied,
        terms.join(","),
        report.overlap_flagged
    ))
}

#[wasm_bindgen]
pub fn render_rgba(
    scene_json: &str,
    method: &str,
    depth: u32,
    width: u32,
    height: u32,
) -> Result<Vec<u8>, JsError> {
    render_pixels(scene_json, method, depth, width, height).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn heatmap_rgba(
    scene_json: &str,
    method: &str,
    depth: u32,
    width: u32,
    height: u32,
    max_count: u32,
) -> Result<Vec<u8>, JsError> {
    heatmap_pixels(scene_json, method, depth, width, height, max_count)
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn check_fiber(points: &[f32]) -> Result<String, JsError> {
    check_points(points).map_err(|e| JsError::new(&e))
}
