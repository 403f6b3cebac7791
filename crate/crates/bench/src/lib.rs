//! Commands behind the `fiberbench` binary, usable without the CLI.

pub mod check;
pub mod images;
pub mod sweep;

pub use check::{check_scene, repair_scene, CheckReport, FiberStatus};
pub use images::{camera_for, heatmap, render, DEFAULT_RES};
pub use sweep::{bench_rays, parse_depths, run_sweep, BenchRecord, CSV_HEADER};
