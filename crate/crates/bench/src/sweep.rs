//! Throughput and counter sweeps over subdivision depth.

use std::time::Instant;

use fibertrace::render::{trace, Method};
use fibertrace::sample::{bounding_sphere_ray, scene_bounds};
use fibertrace::traversal::MAX_DEPTH;
use fibertrace::{Counters, CubicBezier, Ray};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const CSV_HEADER: &str =
    "depth,method,rays_per_second,mean_iterations,mean_cylinder_tests,mean_aabb_tests,mean_backtracks";

/// Rays per work item handed to the pool.
const CHUNK: usize = 256;

/// One row of the sweep CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRecord {
    pub depth: u32,
    pub method: Method,
    /// `None` when timing was disabled.
    pub rays_per_second: Option<f64>,
    pub counters: Counters,
    pub rays: usize,
}

impl BenchRecord {
    fn mean(&self, v: u64) -> f64 {
        v as f64 / self.rays as f64
    }

    pub fn mean_iterations(&self) -> f64 {
        self.mean(self.counters.iterations)
    }

    pub fn mean_cylinder_tests(&self) -> f64 {
        self.mean(self.counters.cylinder_tests)
    }

    pub fn mean_aabb_tests(&self) -> f64 {
        self.mean(self.counters.aabb_tests)
    }

    pub fn mean_backtracks(&self) -> f64 {
        self.mean(self.counters.backtracks)
    }

    pub fn mean_pruning_tests(&self) -> f64 {
        self.mean(self.method.pruning_tests(&self.counters))
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.1},{:.4},{:.4},{:.4},{:.4}",
            self.depth,
            self.method,
            self.rays_per_second.unwrap_or(0.0),
            self.mean_iterations(),
            self.mean_cylinder_tests(),
            self.mean_aabb_tests(),
            self.mean_backtracks()
        )
    }
}

/// `a..b` (inclusive) or a comma-separated list, each within `1..=23`.
pub fn parse_depths(s: &str) -> Result<Vec<u32>, String> {
    let parse = |v: &str| {
        let d: u32 = v.trim().parse().map_err(|_| format!("bad depth `{v}`"))?;
        if (1..=MAX_DEPTH).contains(&d) {
            Ok(d)
        } else {
            Err(format!("depth {d} outside 1..={MAX_DEPTH}"))
        }
    };
    let depths: Vec<u32> = match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            (a..=b).collect()
        }
        None => s.split(',').map(parse).collect::<Result<_, _>>()?,
    };
    Ok(depths)
}

/// The seeded sweep ray set: origins on the sphere of twice the scene's
/// bounding radius, aimed at uniform points inside the bounding sphere.
pub fn bench_rays(curves: &[CubicBezier], count: usize, seed: u64) -> Vec<Ray> {
    let (center, radius) = scene_bounds(curves);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| bounding_sphere_ray(&mut rng, center, radius))
        .collect()
}

fn sweep_one(curves: &[CubicBezier], rays: &[Ray], method: Method, depth: u32) -> Counters {
    rays.par_chunks(CHUNK)
        .map(|chunk| {
            let mut n = Counters::default();
            for ray in chunk {
                trace(curves, ray, method, depth, &mut n);
            }
            n
        })
        .reduce(Counters::default, |mut a, b| {
            a += b;
            a
        })
}

/// One record per `(depth, method)`, depth-major, on the same ray set.
pub fn run_sweep(
    curves: &[CubicBezier],
    rays: &[Ray],
    depths: &[u32],
    methods: &[Method],
    timing: bool,
) -> Vec<BenchRecord> {
    let mut out = Vec::with_capacity(depths.len() * methods.len());
    for &depth in depths {
        for &method in methods {
            let start = Instant::now();
            let counters = sweep_one(curves, rays, method, depth);
            let secs = start.elapsed().as_secs_f64();
            out.push(BenchRecord {
                depth,
                method,
                rays_per_second: timing.then(|| rays.len() as f64 / secs.max(1e-9)),
                counters,
                rays: rays.len().max(1),
            });
        }
    }
    out
}
