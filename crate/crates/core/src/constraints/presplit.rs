use thiserror::Error;

use super::check;
use crate::geometry::CubicBezier;

/// Maximum bisection depth used by default (at most 2^16 pieces).
pub const DEFAULT_MAX_SPLITS: u32 = 16;

/// A valid piece of a pre-split curve and the parameter interval of the
/// source curve it covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub curve: CubicBezier,
    pub u0: f64,
    pub u1: f64,
}

impl Piece {
    /// Maps a parameter of the piece back to the source curve.
    pub fn source_u(&self, u: f64) -> f64 {
        self.u0 + u * (self.u1 - self.u0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PresplitError {
    #[error("{} interval(s) still invalid after {max_splits} bisections: {intervals:?}", intervals.len())]
    Exhausted {
        max_splits: u32,
        intervals: Vec<(f64, f64)>,
    },
}

/// Bisects `c` at parameter midpoints until every piece satisfies the
/// cubic inequalities and the end-plane overlap test.
///
/// Pieces are returned in parameter order and tile `[0, 1]`.
pub fn presplit(c: &CubicBezier, max_splits: u32) -> Result<Vec<Piece>, PresplitError> {
    let mut pieces = Vec::new();
    let mut failed = Vec::new();
    split_rec(*c, 0.0, 1.0, max_splits, &mut pieces, &mut failed);
    if failed.is_empty() {
        Ok(pieces)
    } else {
        Err(PresplitError::Exhausted {
            max_splits,
            intervals: failed,
        })
    }
}

fn split_rec(
    c: CubicBezier,
    u0: f64,
    u1: f64,
    budget: u32,
    pieces: &mut Vec<Piece>,
    failed: &mut Vec<(f64, f64)>,
) {
    if check(&c).satisfied {
        pieces.push(Piece { curve: c, u0, u1 });
        return;
    }
    if budget == 0 {
        failed.push((u0, u1));
        return;
    }
    let (l, r) = c.split_half();
    let mid = 0.5 * (u0 + u1);
    split_rec(l, u0, mid, budget - 1, pieces, failed);
    split_rec(r, mid, u1, budget - 1, pieces, failed);
}

#[cfg(test)]
mod tests {
    use super::*;
    use glam::{Vec3, Vec4Swizzles};

    fn cubic(p: [[f32; 3]; 4], r: f32) -> CubicBezier {
        CubicBezier::from_array(p.map(|v| [v[0], v[1], v[2], r]))
    }

    fn assert_tiles(pieces: &[Piece]) {
        assert_eq!(pieces.first().unwrap().u0, 0.0);
        assert_eq!(pieces.last().unwrap().u1, 1.0);
        for w in pieces.windows(2) {
            assert_eq!(w[0].u1, w[1].u0);
        }
    }

    #[test]
    fn valid_curve_is_one_piece() {
        let c = cubic(
            [
                [0.0, 0.0, 0.0],
                [1.0, 0.6, 0.0],
                [2.0, -0.6, 0.0],
                [3.0, 0.0, 0.0],
            ],
            0.02,
        );
        let pieces = presplit(&c, DEFAULT_MAX_SPLITS).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!((pieces[0].u0, pieces[0].u1), (0.0, 1.0));
        assert_eq!(pieces[0].curve, c);
    }

    #[test]
    fn loop_splits_into_valid_pieces() {
        let c = cubic(
            [
                [0.0, 0.0, 0.0],
                [5.0, 1.0, 0.0],
                [-1.0, 1.0, 0.0],
                [4.0, 0.0, 0.0],
            ],
            0.02,
        );
        let pieces = presplit(&c, DEFAULT_MAX_SPLITS).unwrap();
        assert!(pieces.len() > 1 && pieces.len() <= 64, "{}", pieces.len());
        assert_tiles(&pieces);
        for p in &pieces {
            assert!(check(&p.curve).satisfied);
            let mid = 0.5 * (p.u0 + p.u1);
            let expected = c.eval(mid as f32);
            assert!((p.curve.eval(0.5) - expected).length() < 1e-4);
        }
    }

    #[test]
    fn circle_pieces_turn_at_most_quarter() {
        // Four quarter arcs joined into one closed cubic would be invalid;
        // use a single cubic that sweeps almost a full turn.
        let c = cubic(
            [
                [0.0, 0.0, 0.0],
                [4.0, 4.0, 0.0],
                [-4.0, 4.0, 0.0],
                [0.0, 0.1, 0.0],
            ],
            0.01,
        );
        let pieces = presplit(&c, DEFAULT_MAX_SPLITS).unwrap();
        assert!(pieces.len() > 1);
        assert_tiles(&pieces);
        for p in &pieces {
            let t0: Vec3 = (p.curve.eval_derivative(0.0)).xyz().normalize();
            let t1: Vec3 = (p.curve.eval_derivative(1.0)).xyz().normalize();
            assert!(
                t0.dot(t1) >= -1e-6,
                "piece [{}, {}] turns past 90 degrees",
                p.u0,
                p.u1
            );
        }
    }

    #[test]
    fn budget_exhaustion_lists_intervals() {
        let c = cubic(
            [
                [0.0, 0.0, 0.0],
                [5.0, 1.0, 0.0],
                [-1.0, 1.0, 0.0],
                [4.0, 0.0, 0.0],
            ],
            0.02,
        );
        match presplit(&c, 0) {
            Err(PresplitError::Exhausted { intervals, .. }) => {
                assert_eq!(intervals, vec![(0.0, 1.0)])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn source_parameter_remap() {
        let p = Piece {
            curve: cubic([[0.0; 3]; 4], 0.0),
            u0: 0.25,
            u1: 0.5,
        };
        assert_eq!(p.source_u(0.5), 0.375);
    }
}
