//! JSON scene files: fibers as four `[x, y, z, r]` control points and an
//! optional pinhole camera.
//!
//! ```json
//! {
//!   "fibers": [{ "points": [[0, 0, 0, 0.1], [1, 0, 0, 0.1], [2, 0, 0, 0.1], [3, 0, 0, 0.1]] }],
//!   "camera": { "origin": [1.5, 0, -6], "look_at": [1.5, 0, 0], "up": [0, 1, 0],
//!               "fov_deg": 40, "width": 256, "height": 256 }
//! }
//! ```

use std::path::Path;

use glam::Vec3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::CubicBezier;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fiber {
    pub points: [[f32; 4]; 4],
}

impl Fiber {
    pub fn curve(&self) -> CubicBezier {
        CubicBezier::from_array(self.points)
    }
}

impl From<&CubicBezier> for Fiber {
    fn from(c: &CubicBezier) -> Self {
        Fiber {
            points: c.to_array(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CameraRecord {
    pub origin: [f32; 3],
    pub look_at: [f32; 3],
    pub up: [f32; 3],
    pub fov_deg: f32,
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub fibers: Vec<Fiber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub camera: Option<CameraRecord>,
}

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Scene {
    pub fn from_curves(curves: &[CubicBezier]) -> Self {
        Scene {
            fibers: curves.iter().map(Fiber::from).collect(),
            camera: None,
        }
    }

    pub fn curves(&self) -> Vec<CubicBezier> {
        self.fibers.iter().map(Fiber::curve).collect()
    }

    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let scene: Scene = serde_json::from_str(text).map_err(|e| SceneError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn load(path: &Path) -> Result<Self, SceneError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    pub fn validate(&self) -> Result<(), SceneError> {
        for (i, f) in self.fibers.iter().enumerate() {
            for (j, p) in f.points.iter().enumerate() {
                let field = || format!("fibers[{i}].points[{j}]");
                if p.iter().any(|v| !v.is_finite()) {
                    return Err(SceneError::Invalid {
                        field: field(),
                        message: "non-finite coordinate".into(),
                    });
                }
                if p[3] < 0.0 {
                    return Err(SceneError::Invalid {
                        field: field(),
                        message: format!("negative radius {}", p[3]),
                    });
                }
            }
        }
        if let Some(cam) = &self.camera {
            let invalid = |field: &str, message: &str| {
                Err(SceneError::Invalid {
                    field: format!("camera.{field}"),
                    message: message.into(),
                })
            };
            let origin = Vec3::from(cam.origin);
            let look_at = Vec3::from(cam.look_at);
            if !(origin.is_finite() && look_at.is_finite() && Vec3::from(cam.up).is_finite()) {
                return invalid("origin", "non-finite vector");
            }
            if origin == look_at {
                return invalid("look_at", "coincides with origin");
            }
            if Vec3::from(cam.up).cross(look_at - origin).length_squared() == 0.0 {
                return invalid("up", "parallel to the view direction");
            }
            if !(cam.fov_deg > 0.0 && cam.fov_deg < 180.0) {
                return invalid("fov_deg", "must lie in (0, 180)");
            }
            if cam.width == 0 || cam.height == 0 {
                return invalid("width", "image size must be positive");
            }
        }
        Ok(())
    }
}
