use fibertrace::render::Method;
use fibertrace::scene::Scene;
use fibertrace_bench::{bench_rays, camera_for, render, run_sweep};

fn curly() -> Scene {
    Scene::parse(include_str!("../../core/scenes/curly.json")).unwrap()
}

#[test]
fn boxes_outnumber_cylinders_at_depth_18() {
    let curves = curly().curves();
    let rays = bench_rays(&curves, 5000, 2);
    let rows = run_sweep(
        &curves,
        &rays,
        &[8, 18, 22],
        &[Method::Cylinder, Method::Aabb],
        false,
    );
    let get = |d: u32, m: Method| rows.iter().find(|r| r.depth == d && r.method == m).unwrap();
    let cyl = get(18, Method::Cylinder).mean_cylinder_tests();
    let boxes = get(18, Method::Aabb).mean_aabb_tests();
    assert!(boxes >= 10.0 * cyl, "{boxes} vs {cyl}");
    let flat =
        get(22, Method::Cylinder).mean_iterations() / get(8, Method::Cylinder).mean_iterations();
    assert!(flat <= 3.0, "{flat}");
}

fn decode(px: &[u8]) -> [f32; 3] {
    let n = [0, 1, 2].map(|i| px[i] as f32 / 255.0 * 2.0 - 1.0);
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    n.map(|v| v / len)
}

#[test]
fn flat_and_round_shading_differ_on_the_silhouette() {
    let scene = curly();
    let curves = scene.curves();
    let cam = camera_for(&scene, Some((160, 160)));
    let round = render(&curves, &cam, Method::Cylinder, 16);
    let flat = render(&curves, &cam, Method::Aabb, 16);
    let (w, h) = (cam.width as usize, cam.height as usize);
    let at = |img: &fibertrace::render::Image, x: usize, y: usize| {
        let i = 3 * (y * w + x);
        [img.data[i], img.data[i + 1], img.data[i + 2]]
    };
    let hit = |img: &fibertrace::render::Image, x: usize, y: usize| at(img, x, y) != [0, 0, 0];
    let mut angles = Vec::new();
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            if !(hit(&round, x, y) && hit(&flat, x, y)) {
                continue;
            }
            let edge = [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)]
                .iter()
                .any(|&(u, v)| !hit(&round, u, v));
            if edge {
                let (a, b) = (decode(&at(&round, x, y)), decode(&at(&flat, x, y)));
                let dot = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0);
                angles.push(dot.acos().to_degrees());
            }
        }
    }
    assert!(angles.len() > 50, "{}", angles.len());
    let mean = angles.iter().sum::<f32>() / angles.len() as f32;
    assert!(mean > 5.0, "{mean}");
}
