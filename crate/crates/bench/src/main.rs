use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fibertrace::render::{Image, Method, DEFAULT_MAX_COUNT};
use fibertrace::scene::Scene;
use fibertrace_bench::{
    bench_rays, camera_for, check_scene, heatmap, parse_depths, render, repair_scene, run_sweep,
    CSV_HEADER,
};

#[derive(Parser)]
#[command(
    name = "fiberbench",
    version,
    about = "Checks, sweeps, heatmaps and renders for cubic fibers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every fiber against the disjointness constraints.
    Check {
        /// Write a pre-split scene with repaired fibers here.
        #[arg(long, value_name = "OUT")]
        repair: Option<PathBuf>,
        scene: PathBuf,
    },
    /// Counter and throughput sweep over depths, as CSV on stdout.
    Bench {
        #[arg(long, default_value = "2..22", value_parser = parse_depths)]
        depths: Depths,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        rays: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = MethodSel::Both)]
        method: MethodSel,
        /// Report 0 rays/s so that output is reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
        scene: PathBuf,
    },
    /// Pruning-test count per pixel as a binary PGM.
    Heatmap {
        #[arg(long, default_value = "cylinder")]
        method: Method,
        #[arg(long, default_value_t = 18, value_parser = clap::value_parser!(u32).range(1..=23))]
        depth: u32,
        #[arg(long, value_parser = parse_res)]
        res: Option<(u32, u32)>,
        #[arg(long, default_value_t = DEFAULT_MAX_COUNT)]
        max_count: u64,
        #[arg(short, long, default_value = "heatmap.pgm")]
        output: PathBuf,
        scene: PathBuf,
    },
    /// Normal-shaded render as a binary PPM.
    Render {
        #[arg(long, default_value = "cylinder")]
        method: Method,
        #[arg(long, default_value_t = 18, value_parser = clap::value_parser!(u32).range(1..=23))]
        depth: u32,
        #[arg(long, value_parser = parse_res)]
        res: Option<(u32, u32)>,
        #[arg(short, long, default_value = "render.ppm")]
        output: PathBuf,
        scene: PathBuf,
    },
}

type Depths = Vec<u32>;

#[derive(Clone, Copy, ValueEnum)]
enum MethodSel {
    Both,
    Cylinder,
    Aabb,
}

const MAX_RES: u32 = 8192;

fn parse_res(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got `{s}`"))?;
    let dim = |v: &str| -> Result<u32, String> {
        let n: u32 = v.parse().map_err(|_| format!("bad size `{v}`"))?;
        if (1..=MAX_RES).contains(&n) {
            Ok(n)
        } else {
            Err(format!("size {n} outside 1..={MAX_RES}"))
        }
    };
    Ok((dim(w)?, dim(h)?))
}

fn load(path: &Path) -> Result<Scene, ExitCode> {
    Scene::load(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn write_image(path: &Path, img: &Image) -> Result<(), ExitCode> {
    std::fs::write(path, img.to_netpbm()).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Check { repair, scene } => {
            let s = load(&scene)?;
            let report = check_scene(&s);
            for line in report.lines() {
                println!("{line}");
            }
            let Some(out) = repair else {
                return Ok(if report.violations() == 0 {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            };
            let (fixed, messages) = repair_scene(&s);
            for m in messages {
                println!("{m}");
            }
            let after = check_scene(&fixed);
            std::fs::write(&out, fixed.to_json() + "\n").map_err(|e| {
                eprintln!("error: {}: {e}", out.display());
                ExitCode::from(2)
            })?;
            println!(
                "wrote {} ({})",
                out.display(),
                after.lines().last().unwrap()
            );
            Ok(if after.violations() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bench {
            depths,
            rays,
            seed,
            method,
            no_timing,
            scene,
        } => {
            let curves = load(&scene)?.curves();
            let methods: &[Method] = match method {
                MethodSel::Both => &[Method::Cylinder, Method::Aabb],
                MethodSel::Cylinder => &[Method::Cylinder],
                MethodSel::Aabb => &[Method::Aabb],
            };
            let rays = bench_rays(&curves, rays as usize, seed);
            let records = run_sweep(&curves, &rays, &depths, methods, !no_timing);
            let mut out = std::io::stdout().lock();
            let mut text = format!("{CSV_HEADER}\n");
            for r in &records {
                text += &r.csv_row();
                text.push('\n');
            }
            out.write_all(text.as_bytes())
                .map_err(|_| ExitCode::from(2))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Heatmap {
            method,
            depth,
            res,
            max_count,
            output,
            scene,
        } => {
            let s = load(&scene)?;
            let cam = camera_for(&s, res);
            write_image(
                &output,
                &heatmap(&s.curves(), &cam, method, depth, max_count),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            method,
            depth,
            res,
            output,
            scene,
        } => {
            let s = load(&scene)?;
            let cam = camera_for(&s, res);
            write_image(&output, &render(&s.curves(), &cam, method, depth))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
