use glam::Vec3;

/// A query ray with unit direction, restricted to `[0, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Vec3,
    pub direction: Vec3,
    pub t_max: f32,
}

impl Ray {
    /// Builds a ray, normalizing `direction`.
    pub fn new(origin: Vec3, direction: Vec3, t_max: f32) -> Self {
        Self {
            origin,
            direction: direction.normalize(),
            t_max,
        }
    }

    /// A ray without an upper distance bound.
    pub fn unbounded(origin: Vec3, direction: Vec3) -> Self {
        Self::new(origin, direction, f32::MAX)
    }

    pub fn at(&self, t: f32) -> Vec3 {
        self.origin + t * self.direction
    }

    /// Same ray with a tighter distance bound.
    pub fn with_t_max(self, t_max: f32) -> Self {
        Self { t_max, ..self }
    }
}

/// A ray/fiber hit: distance along the ray, curve parameter and unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intersection {
    pub t: f32,
    pub u: f32,
    pub normal: Vec3,
}
