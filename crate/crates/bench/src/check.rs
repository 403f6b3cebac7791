//! Constraint validation and pre-split repair of scenes.

use fibertrace::constraints::{check, presplit, ConstraintReport, DEFAULT_MAX_SPLITS};
use fibertrace::scene::{Fiber, Scene};

#[derive(Debug, Clone, PartialEq)]
pub struct FiberStatus {
    pub index: usize,
    pub report: ConstraintReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub fibers: Vec<FiberStatus>,
}

impl CheckReport {
    pub fn violations(&self) -> usize {
        self.fibers.iter().filter(|f| !f.report.satisfied).count()
    }

    /// One line per failing fiber, then the summary line.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in &self.fibers {
            for term in &f.report.violated_terms {
                out.push(format!("fiber {}: violates {term}", f.index));
            }
            if f.report.overlap_flagged {
                out.push(format!("fiber {}: overlap_flagged", f.index));
            }
        }
        let n = self.fibers.len();
        let v = self.violations();
        out.push(format!(
            "{n} fiber{}, {v} violation{}",
            if n == 1 { "" } else { "s" },
            if v == 1 { "" } else { "s" }
        ));
        out
    }
}

pub fn check_scene(scene: &Scene) -> CheckReport {
    CheckReport {
        fibers: scene
            .fibers
            .iter()
            .enumerate()
            .map(|(index, f)| FiberStatus {
                index,
                report: check(&f.curve()),
            })
            .collect(),
    }
}

/// Replaces every failing fiber by its pre-split pieces. Fibers whose
/// split budget runs out are kept unchanged, with their messages.
pub fn repair_scene(scene: &Scene) -> (Scene, Vec<String>) {
    let mut fibers = Vec::new();
    let mut messages = Vec::new();
    for (i, f) in scene.fibers.iter().enumerate() {
        let c = f.curve();
        if check(&c).satisfied {
            fibers.push(f.clone());
            continue;
        }
        match presplit(&c, DEFAULT_MAX_SPLITS) {
            Ok(pieces) => {
                messages.push(format!("fiber {i}: split into {} pieces", pieces.len()));
                fibers.extend(pieces.iter().map(|p| Fiber::from(&p.curve)));
            }
            Err(e) => {
                messages.push(format!("fiber {i}: not repaired: {e}"));
                fibers.push(f.clone());
            }
        }
    }
    (
        Scene {
            fibers,
            camera: scene.camera,
        },
        messages,
    )
}
