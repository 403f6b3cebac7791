//! Real roots of low-degree polynomials.
//!
//! Closed forms up to degree four (Ferrari's method on the depressed
//! quartic, with a trigonometric/Cardano cubic for the resolvent), each
//! root polished by Newton steps. [`Poly::roots_in`] handles arbitrary
//! degree on an interval by bracketing between the roots of the derivative.

use std::ops::{Add, Mul, Sub};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial has no non-constant term")]
    Degenerate,
}

const NEWTON_STEPS: usize = 2;

fn eval_desc(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..NEWTON_STEPS {
        let (p, dp) = eval_desc(coeffs, x);
        if dp == 0.0 || !p.is_finite() {
            break;
        }
        let next = x - p / dp;
        if !next.is_finite() || eval_desc(coeffs, next).0.abs() > p.abs() {
            break;
        }
        x = next;
    }
    x
}

fn finish(coeffs: &[f64], mut roots: Vec<f64>) -> Vec<f64> {
    for r in roots.iter_mut() {
        *r = polish(coeffs, *r);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
    roots
}

/// Real roots of `a x^2 + b x + c`, ascending. A double root is reported once.
pub fn solve_quadratic(a: f64, b: f64, c: f64) -> Result<Vec<f64>, PolyError> {
    if a == 0.0 {
        if b == 0.0 {
            return Err(PolyError::Degenerate);
        }
        return Ok(vec![-c / b]);
    }
    Ok(finish(&[a, b, c], quadratic_raw(a, b, c)))
}

fn quadratic_raw(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    let scale = b * b + (4.0 * a * c).abs();
    if disc < -1e-14 * scale {
        return Vec::new();
    }
    if disc <= 1e-14 * scale {
        return vec![-b / (2.0 * a)];
    }
    // avoids cancellation between -b and the root of the discriminant
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    vec![q / a, c / q]
}

/// Real roots of `a x^3 + b x^2 + c x + d`, ascending.
pub fn solve_cubic(a: f64, b: f64, c: f64, d: f64) -> Result<Vec<f64>, PolyError> {
    if a == 0.0 {
        return solve_quadratic(b, c, d);
    }
    Ok(finish(&[a, b, c, d], cubic_raw(b / a, c / a, d / a)))
}

/// Roots of the monic `x^3 + b x^2 + c x + d`.
fn cubic_raw(b: f64, c: f64, d: f64) -> Vec<f64> {
    // x = y - b/3 gives y^3 + p y + q
    let shift = b / 3.0;
    let p = c - b * shift;
    let q = d - c * shift + 2.0 * shift * shift * shift;

    let scale = (p.abs().sqrt()).max(q.abs().cbrt());
    if scale <= 1e-12 * shift.abs() || scale < 1e-100 {
        // triple root
        return vec![-shift];
    }
    let pn = p / (scale * scale);
    let qn = q / (scale * scale * scale);
    let disc = (qn / 2.0).powi(2) + (pn / 3.0).powi(3);

    let ys: Vec<f64> = if disc.abs() <= 1e-14 {
        if pn == 0.0 {
            vec![0.0]
        } else {
            // double root
            let y = 3.0 * qn / pn;
            vec![y, -y / 2.0]
        }
    } else if disc > 0.0 {
        let sq = disc.sqrt();
        let u = (-qn / 2.0 + sq).cbrt();
        let v = (-qn / 2.0 - sq).cbrt();
        vec![u + v]
    } else {
        let m = 2.0 * (-pn / 3.0).sqrt();
        let arg = (3.0 * qn / (pn * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos())
            .collect()
    };
    ys.into_iter().map(|y| y * scale - shift).collect()
}

/// Real roots of `c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0`, ascending, each
/// refined by two Newton steps. Lower degrees are handled when the leading
/// coefficients vanish. Repeated roots are reported once.
pub fn solve_quartic(c4: f64, c3: f64, c2: f64, c1: f64, c0: f64) -> Result<Vec<f64>, PolyError> {
    if c4 == 0.0 {
        return solve_cubic(c3, c2, c1, c0);
    }
    let (b, c, d, e) = (c3 / c4, c2 / c4, c1 / c4, c0 / c4);

    // Tschirnhaus shift x = y - b/4 removes the cubic term: y^4 + p y^2 + q y + r
    let shift = b / 4.0;
    let b2 = b * b;
    let p = c - 3.0 * b2 / 8.0;
    let q = d - b * c / 2.0 + b2 * b / 8.0;
    let r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;

    let scale = 1.0 + p.abs() + q.abs().sqrt() + r.abs().sqrt();
    let ys: Vec<f64> = if q.abs() <= 1e-14 * scale * scale {
        // biquadratic in z = y^2
        quadratic_raw(1.0, p, r)
            .into_iter()
            .filter(|&z| z >= -1e-14 * scale)
            .flat_map(|z| {
                let s = z.max(0.0).sqrt();
                [s, -s]
            })
            .collect()
    } else {
        // (y^2 + p/2 + m)^2 = 2m y^2 - q y + (m^2 + m p + p^2/4 - r) is a
        // perfect square when m solves the resolvent cubic; take the largest root.
        let m = cubic_raw(p, p * p / 4.0 - r, -q * q / 8.0)
            .into_iter()
            .fold(f64::MIN, f64::max);
        let m = polish(&[1.0, p, p * p / 4.0 - r, -q * q / 8.0], m);
        if m <= 0.0 {
            Vec::new()
        } else {
            let s = (2.0 * m).sqrt();
            let k = q / (2.0 * s);
            let mut ys = quadratic_raw(1.0, -s, p / 2.0 + m + k);
            ys.extend(quadratic_raw(1.0, s, p / 2.0 + m - k));
            ys
        }
    };

    Ok(finish(
        &[c4, c3, c2, c1, c0],
        ys.into_iter().map(|y| y - shift).collect(),
    ))
}

/// Dense polynomial with ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn constant(c: f64) -> Self {
        Poly(vec![c])
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::constant(0.0);
        }
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Poly {
        Poly(self.0.iter().map(|c| c * s).collect())
    }

    /// Drops leading coefficients negligible against the largest one.
    fn trimmed(&self) -> Poly {
        let max = self.0.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let mut c = self.0.clone();
        while c.len() > 1 && c.last().is_some_and(|l| l.abs() <= 1e-13 * max) {
            c.pop();
        }
        Poly(c)
    }

    /// Real roots in `[lo, hi]`, ascending.
    ///
    /// Up to degree four the closed forms are used; above that the roots of
    /// the derivative split the interval into monotone pieces, each holding
    /// at most one root found by bisection.
    pub fn roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let p = self.trimmed();
        let deg = p.0.len() - 1;
        if deg == 0 {
            return Vec::new();
        }
        if deg <= 4 {
            let mut c = [0.0; 5];
            for (i, &v) in p.0.iter().enumerate() {
                c[4 - i] = v;
            }
            return solve_quartic(c[0], c[1], c[2], c[3], c[4])
                .unwrap_or_default()
                .into_iter()
                .filter(|&x| x >= lo && x <= hi)
                .collect();
        }

        let mut knots = vec![lo];
        knots.extend(p.derivative().roots_in(lo, hi));
        knots.push(hi);

        let mut roots = Vec::new();
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (p.eval(a), p.eval(b));
            if fa == 0.0 {
                roots.push(a);
            } else if fa.signum() != fb.signum() && fb != 0.0 {
                roots.push(bisect(&p, a, b, fa));
            }
        }
        if p.eval(hi) == 0.0 {
            roots.push(hi);
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        roots
    }
}

fn bisect(p: &Poly, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = p.eval(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0.0) + rhs.0.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }
}
