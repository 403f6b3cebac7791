//! The eleven acceptance criteria, one PASS/FAIL line each.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use fibertrace::constraints::{check_quadratic_slack, violated_terms};
use fibertrace::geometry::{intersect_cylinder, CYLINDER_MISS};
use fibertrace::oracle::{chord_deviation, cylinder_unreduced, Tessellation};
use fibertrace::poly::solve_quartic;
use fibertrace::render::{probe_pixel, Method};
use fibertrace::sample::{
    bounding_sphere_ray, near_fiber_ray, random_cubic_in_constraints, random_valid_fiber,
    random_valid_quadratic, unit_vector,
};
use fibertrace::scene::Scene;
use fibertrace::traversal::{
    get_interval, intersect_stack_probed, min_size_for_depth, MAX_DEPTH, ROOT_SIZE,
};
use fibertrace::{intersect_depth, intersect_probed, CubicBezier, Probe, Ray};
use fibertrace_bench::{bench_rays, camera_for, run_sweep};
use glam::{DVec3, Vec3};
use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn curly_scene() -> Scene {
    Scene::parse(include_str!("../../core/scenes/curly.json")).unwrap()
}

/// Ray/fiber pair of the oracle suite with both answers.
struct Case {
    curve: usize,
    ray: Ray,
    ours: Option<fibertrace::Intersection>,
    oracle: Option<fibertrace::oracle::OracleHit>,
    clearance: f64,
}

const SUITE_DEPTH: u32 = 20;

/// 100 valid fibers, 100 rays each: half from the bounding-sphere
/// distribution, half aimed near the centerline.
fn oracle_suite() -> (Vec<CubicBezier>, Vec<Case>) {
    let mut r = rng(1001);
    let curves: Vec<CubicBezier> = (0..100).map(|_| random_valid_fiber(&mut r)).collect();
    let mut cases = Vec::with_capacity(10_000);
    for (i, c) in curves.iter().enumerate() {
        let tess = Tessellation::new(c, fibertrace::oracle::DEFAULT_SEGMENTS);
        let (center, radius) = c.bounding_sphere();
        for k in 0..100 {
            let ray = if k % 2 == 0 {
                bounding_sphere_ray(&mut r, center, radius)
            } else {
                near_fiber_ray(&mut r, c)
            };
            cases.push(Case {
                curve: i,
                ray,
                ours: intersect_depth(&ray, c, SUITE_DEPTH),
                oracle: tess.intersect(&ray),
                clearance: tess.clearance(&ray),
            });
        }
    }
    (curves, cases)
}

/// Rays within this fraction of the fiber radius of tangency.
const GRAZING_BAND: f64 = 1e-3;

fn c1(curves: &[CubicBezier], cases: &[Case]) -> Outcome {
    let (mut hits, mut disagree, mut outside_band) = (0, 0, 0);
    let (mut worst_t, mut worst_u, mut worst_n) = (0.0f64, 0.0f64, 1.0f64);
    for case in cases {
        let r = f64::from(curves[case.curve].max_radius());
        let grazing = case.clearance.abs() <= GRAZING_BAND * r;
        match (&case.ours, &case.oracle) {
            (Some(a), Some(o)) => {
                if grazing {
                    continue;
                }
                hits += 1;
                worst_t = worst_t.max((f64::from(a.t) - o.t).abs() / o.t);
                worst_u = worst_u.max((f64::from(a.u) - o.u).abs());
                worst_n = worst_n.min(a.normal.as_dvec3().dot(o.normal));
            }
            (None, None) => {}
            _ => {
                disagree += 1;
                if !grazing {
                    outside_band += 1;
                }
            }
        }
    }
    let rate = disagree as f64 / cases.len() as f64;
    let msg = format!(
        "{hits} hits, max rel t {worst_t:.1e}, max u {worst_u:.1e}, min normal dot {worst_n:.6}, {disagree} disagreements ({outside_band} outside band)"
    );
    if worst_t <= 1e-3
        && worst_u <= 1e-3
        && worst_n >= 0.999
        && rate < 1e-3
        && outside_band == 0
        && hits > 1000
    {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c2(curves: &[CubicBezier], cases: &[Case]) -> Outcome {
    let mut violations = 0;
    let mut worst_eps = 0.0f64;
    let mut checked = 0;
    for case in cases {
        let Some(o) = &case.oracle else { continue };
        checked += 1;
        let c = &curves[case.curve];
        let t = case.ours.map_or(f64::INFINITY, |h| f64::from(h.t));
        if o.t >= t {
            continue;
        }
        // Flattening bound at this depth, measured along the ray.
        let eps = chord_deviation(&case.ray, c, SUITE_DEPTH, 4096);
        worst_eps = worst_eps.max(eps);
        let early = if t.is_finite() {
            o.t < t - (eps + 1e-6 * t) / o.cos_incidence.max(1e-3)
        } else {
            case.clearance < -eps
        };
        violations += usize::from(early);
    }
    let msg = format!(
        "{checked} oracle hits, {violations} earlier than t - bound, largest bound {worst_eps:.1e}"
    );
    if violations == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn split64(p: [DVec3; 4]) -> ([DVec3; 4], [DVec3; 4]) {
    let m01 = 0.5 * (p[0] + p[1]);
    let m12 = 0.5 * (p[1] + p[2]);
    let m23 = 0.5 * (p[2] + p[3]);
    let a = 0.5 * (m01 + m12);
    let b = 0.5 * (m12 + m23);
    let s = 0.5 * (a + b);
    ([p[0], m01, a, s], [s, b, m23, p[3]])
}

fn c3() -> Outcome {
    let mut r = rng(1003);
    let (mut children, mut failed) = (0, 0);
    for _ in 0..1000 {
        let mut q = random_valid_quadratic(&mut r);
        for _ in 0..10 {
            let (a, b) = q.split_half();
            children += 2;
            failed += usize::from(!check_quadratic_slack(&a, 1e-6))
                + usize::from(!check_quadratic_slack(&b, 1e-6));
            q = if r.random() { b } else { a };
        }
    }
    for _ in 0..1000 {
        let mut c = random_cubic_in_constraints(&mut r);
        for _ in 0..10 {
            let (a, b) = c.split_half();
            children += 2;
            failed += usize::from(!violated_terms(&a, 1e-6).is_empty())
                + usize::from(!violated_terms(&b, 1e-6).is_empty());
            c = if r.random() { b } else { a };
        }
    }
    let msg = format!("{children} children, {failed} failing");
    if failed == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c4() -> Outcome {
    let mut r = rng(1003);
    // Same cubic population as the closure check.
    for _ in 0..1000 {
        let mut q = random_valid_quadratic(&mut r);
        for _ in 0..10 {
            let (a, b) = q.split_half();
            q = if r.random() { b } else { a };
        }
    }
    let (mut points, mut failed) = (0, 0);
    for _ in 0..1000 {
        let mut p = random_cubic_in_constraints(&mut r)
            .points()
            .map(|v| v.truncate().as_dvec3());
        let mut f32_curve_done = false;
        for _ in 0..10 {
            let s = (p[0] + 3.0 * p[1] + 3.0 * p[2] + p[3]) / 8.0;
            let t = 0.75 * (-p[0] - p[1] + p[2] + p[3]);
            let scale = p
                .iter()
                .map(|q| q.distance_squared(p[0]))
                .fold(0.0, f64::max);
            let (left, right) = split64(p);
            for q in left {
                points += 1;
                failed += usize::from((q - s).dot(t) > 1e-6 * scale);
            }
            for q in right {
                points += 1;
                failed += usize::from((q - s).dot(t) < -1e-6 * scale);
            }
            p = if r.random() { right } else { left };
            f32_curve_done = true;
        }
        debug_assert!(f32_curve_done);
    }
    let msg = format!("{points} child control points, {failed} on the wrong side");
    if failed == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

#[derive(Default, PartialEq)]
struct Recorder {
    nodes: Vec<(u32, u32)>,
    leaves: Vec<(u32, u32)>,
}

impl Probe for Recorder {
    fn node(&mut self, start: u32, size: u32) {
        self.nodes.push((start, size));
    }
    fn leaf(&mut self, start: u32, size: u32) {
        self.leaves.push((start, size));
    }
}

fn c5() -> Outcome {
    let mut r = rng(1005);
    let (mut same, mut hits) = (0, 0);
    for i in 0..1000 {
        let c = if i % 4 == 3 {
            let mut c = random_cubic_in_constraints(&mut r);
            for p in [&mut c.p0, &mut c.p1, &mut c.p2, &mut c.p3] {
                p.w = 0.05;
            }
            c
        } else {
            random_valid_fiber(&mut r)
        };
        let ray = near_fiber_ray(&mut r, &c);
        let depth = r.random_range(1..=12);
        let (mut a, mut b) = (Recorder::default(), Recorder::default());
        let x = intersect_probed(&ray, &c, min_size_for_depth(depth), &mut a);
        let y = intersect_stack_probed(&ray, &c, min_size_for_depth(depth), &mut b);
        let bits = |h: Option<fibertrace::Intersection>| h.map(|h| (h.t.to_bits(), h.u.to_bits()));
        hits += usize::from(x.is_some());
        same += usize::from(bits(x) == bits(y) && a.leaves == b.leaves && a.nodes == b.nodes);
    }
    let msg = format!("{same}/1000 identical ({hits} hits)");
    if same == 1000 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c6() -> Outcome {
    let mut r = rng(1006);
    let (mut configs, mut failed, mut worst) = (0, 0, 0.0f64);
    while configs < 100_000 {
        let o = Vec3::new(
            r.random_range(-3.0..3.0),
            r.random_range(-3.0..3.0),
            r.random_range(-3.0..3.0),
        );
        let a = unit_vector(&mut r);
        let len: f32 = r.random_range(0.2..4.0);
        let rad: f32 = r.random_range(0.05..1.5);
        // Non-degenerate: axis not near the ray direction, ray not within
        // a relative discriminant of 1e-3 of tangency.
        if (a.x * a.x + a.y * a.y).sqrt() <= 0.1 {
            continue;
        }
        let (od, ad) = (o.as_dvec3(), a.as_dvec3());
        let lateral = od.dot(DVec3::Z.cross(ad).normalize()).abs() / f64::from(rad);
        if (1.0 - lateral * lateral).abs() < 1e-3 {
            continue;
        }
        let want = cylinder_unreduced(DVec3::ZERO, DVec3::Z, od, ad, f64::from(rad));
        configs += 1;
        let got = intersect_cylinder(o, a * len, rad);
        let ok = match want {
            None => got == CYLINDER_MISS,
            Some((t0, t1)) => {
                let e = (f64::from(got.0) - t0)
                    .abs()
                    .max((f64::from(got.1) - t1).abs());
                worst = worst.max(e);
                got != CYLINDER_MISS && e <= 1e-5
            }
        };
        failed += usize::from(!ok);
    }
    let msg =
        format!("{configs} configurations, {failed} outside 1e-5, largest difference {worst:.1e}");
    if failed == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c7() -> Outcome {
    let mut r = rng(1007);
    let scale = (ROOT_SIZE as f32).recip();
    let (mut checked, mut failed) = (0u64, 0u64);
    for k in 0..=MAX_DEPTH {
        let size = 1u32 << k;
        let slots = ROOT_SIZE / size;
        for _ in 0..100_000 {
            let start = r.random_range(0..slots) * size;
            let want = (start as f32 * scale, (start + size) as f32 * scale);
            checked += 1;
            failed += u64::from(get_interval(start, size) != want);
        }
    }
    let msg = format!("{checked} intervals over 24 sizes, {failed} inexact");
    if failed == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c8() -> Outcome {
    let curves = curly_scene().curves();
    let rays = bench_rays(&curves, 100_000, 1);
    let records = run_sweep(
        &curves,
        &rays,
        &[2, 8, 22],
        &[Method::Cylinder, Method::Aabb],
        true,
    );
    let get = |d: u32, m: Method| {
        records
            .iter()
            .find(|r| r.depth == d && r.method == m)
            .unwrap()
    };
    let (cyl8, cyl22) = (get(8, Method::Cylinder), get(22, Method::Cylinder));
    let (box8, box22) = (get(8, Method::Aabb), get(22, Method::Aabb));
    let iter_ratio = cyl22.mean_iterations() / cyl8.mean_iterations();
    let test_ratio = box22.mean_pruning_tests() / box8.mean_pruning_tests();
    let rps = |d: u32, m: Method| get(d, m).rays_per_second.unwrap();
    let ours = rps(22, Method::Cylinder) / rps(2, Method::Cylinder);
    let theirs = rps(22, Method::Aabb) / rps(2, Method::Aabb);
    let msg = format!(
        "cylinder iterations d22/d8 {iter_ratio:.2}, aabb tests d22/d8 {test_ratio:.0}, rays/s d22/d2 cylinder {ours:.2} aabb {theirs:.5}"
    );
    if iter_ratio <= 3.0 && test_ratio >= 50.0 && ours >= 0.25 && theirs <= 0.05 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c9() -> Outcome {
    let scene = curly_scene();
    let curves = scene.curves();
    let cam = camera_for(&scene, None);
    let (mut covered, mut saturated, mut cyl_max) = (0u64, 0u64, 0u64);
    for y in 0..cam.height {
        for x in 0..cam.width {
            let (hit, n) = probe_pixel(&curves, &cam, Method::Cylinder, 18, x, y);
            cyl_max = cyl_max.max(n.cylinder_tests);
            if hit.is_some() {
                covered += 1;
                let (_, b) = probe_pixel(&curves, &cam, Method::Aabb, 18, x, y);
                saturated += u64::from(b.aabb_tests >= 75);
            }
        }
    }
    let frac = saturated as f64 / covered.max(1) as f64;
    let msg = format!(
        "cylinder max {cyl_max}, aabb saturated on {saturated}/{covered} fiber pixels ({:.1}%)",
        100.0 * frac
    );
    if cyl_max < 75 && frac >= 0.01 && covered > 100 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c10() -> Outcome {
    let mut r = rng(1010);
    let (mut worst_res, mut mismatched, mut clustered) = (0.0f64, 0, 0);
    for _ in 0..1000 {
        let sign = if r.random() { 1.0 } else { -1.0 };
        let c: [f64; 5] = [
            sign * r.random_range(0.5..2.0),
            r.random_range(-4.0..4.0),
            r.random_range(-4.0..4.0),
            r.random_range(-4.0..4.0),
            r.random_range(-4.0..4.0),
        ];
        let ours = solve_quartic(c[0], c[1], c[2], c[3], c[4]).unwrap();
        let max_coeff = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for &x in &ours {
            let p = (((c[0] * x + c[1]) * x + c[2]) * x + c[3]) * x + c[4];
            worst_res = worst_res.max(p.abs() / max_coeff);
        }
        let m = Matrix4::new(
            -c[1] / c[0],
            -c[2] / c[0],
            -c[3] / c[0],
            -c[4] / c[0],
            1.0,
            0.0,
            0.0,
            0.0,
            0.0,
            1.0,
            0.0,
            0.0,
            0.0,
            0.0,
            1.0,
            0.0,
        );
        let mut oracle: Vec<f64> = m
            .complex_eigenvalues()
            .iter()
            .filter(|z| z.im.abs() <= 1e-7 * (1.0 + z.re.abs()))
            .map(|z| z.re)
            .collect();
        oracle.sort_by(f64::total_cmp);
        if oracle.windows(2).any(|w| w[1] - w[0] < 1e-3) {
            // Nearly repeated roots: count only a residual check.
            clustered += 1;
            continue;
        }
        let agree = ours.len() == oracle.len()
            && ours
                .iter()
                .zip(&oracle)
                .all(|(a, b)| (a - b).abs() <= 1e-6 * (1.0 + b.abs()));
        mismatched += usize::from(!agree);
    }
    let msg = format!("max residual {worst_res:.1e}, {mismatched} root-set mismatches, {clustered} clustered skipped");
    if worst_res <= 1e-6 && mismatched == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fiberbench");
    let scene = format!("{}/../core/scenes/curly.json", env!("CARGO_MANIFEST_DIR"));
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let runs: [Vec<String>; 3] = [
        [
            "bench",
            "--depths",
            "2..12",
            "--rays",
            "2000",
            "--seed",
            "7",
            "--no-timing",
        ]
        .map(String::from)
        .to_vec(),
        [
            "heatmap", "--method", "aabb", "--depth", "12", "--res", "96x96",
        ]
        .map(String::from)
        .to_vec(),
        [
            "render", "--method", "cylinder", "--depth", "14", "--res", "96x96",
        ]
        .map(String::from)
        .to_vec(),
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let mut cmd = Command::new(bin);
            cmd.args(&args);
            let file = dir.join(format!("det_{}_{rep}", args[0]));
            if args[0] != "bench" {
                cmd.arg("-o").arg(&file);
            }
            let out = cmd.arg(&scene).output().map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!("{} exited with {:?}", args[0], out.status.code()));
            }
            outputs.push(if args[0] == "bench" {
                out.stdout
            } else {
                std::fs::read(&file).map_err(|e| e.to_string())?
            });
        }
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            return Err(format!("{} output differs between runs", args[0]));
        }
    }
    Ok("bench, heatmap and render byte-identical across runs".into())
}

fn main() {
    let suite_start = Instant::now();
    let (curves, cases) = oracle_suite();
    let suite_secs = suite_start.elapsed().as_secs_f64();

    let mut failed = 0;
    let mut report = |n: u32, name: &str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, msg) = match &outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        failed += usize::from(outcome.is_err());
        println!("criterion {n:>2} {tag} {name}: {msg} [{secs:.1}s]");
    };
    report(1, "oracle agreement", &|| {
        c1(&curves, &cases).map(|m| format!("{m}, suite built in {suite_secs:.1}s"))
    });
    report(2, "first-hit soundness", &|| c2(&curves, &cases));
    report(3, "subdivision closure", &c3);
    report(4, "split-plane separation", &c4);
    report(5, "stackless equals stack", &c5);
    report(6, "cylinder algebra", &c6);
    report(7, "interval bit trick", &c7);
    report(8, "depth trend", &c8);
    report(9, "heatmap counts", &c9);
    report(10, "quartic solver", &c10);
    report(11, "determinism", &c11);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
