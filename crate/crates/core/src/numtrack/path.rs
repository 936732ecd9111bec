//! Piecewise paths in a parameter line and standard loop systems.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::TrackError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Piece {
    Segment {
        from: (f64, f64),
        to: (f64, f64),
    },
    /// Circle of the given radius, starting at `start_angle` and sweeping
    /// `sweep` radians (positive is counterclockwise).
    Arc {
        center: (f64, f64),
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

fn c(p: (f64, f64)) -> Complex64 {
    Complex64::new(p.0, p.1)
}

fn pair(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}

impl Piece {
    fn segment(a: Complex64, b: Complex64) -> Piece {
        Piece::Segment {
            from: pair(a),
            to: pair(b),
        }
    }

    /// Position and derivative at local parameter `s` in `[0, 1]`.
    fn eval(&self, s: f64) -> (Complex64, Complex64) {
        match *self {
            Piece::Segment { from, to } => {
                let (a, b) = (c(from), c(to));
                (a + (b - a) * s, b - a)
            }
            Piece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let e = Complex64::from_polar(radius, start_angle + sweep * s);
                (c(center) + e, Complex64::new(0.0, sweep) * e)
            }
        }
    }

    fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { from, to } => Piece::Segment { from: to, to: from },
            Piece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => Piece::Arc {
                center,
                radius,
                start_angle: start_angle + sweep,
                sweep: -sweep,
            },
        }
    }
}

/// A path made of pieces, parametrized by `[0, pieces.len()]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Path {
    pub pieces: Vec<Piece>,
}

impl Path {
    pub fn constant(p: Complex64) -> Path {
        Path {
            pieces: vec![Piece::segment(p, p)],
        }
    }

    pub fn len(&self) -> f64 {
        self.pieces.len() as f64
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn eval(&self, s: f64) -> (Complex64, Complex64) {
        let n = self.pieces.len();
        let k = (s.floor() as usize).min(n - 1);
        self.pieces[k].eval(s - k as f64)
    }

    pub fn start(&self) -> Complex64 {
        self.eval(0.0).0
    }

    pub fn end(&self) -> Complex64 {
        self.eval(self.len()).0
    }

    pub fn reversed(&self) -> Path {
        Path {
            pieces: self.pieces.iter().rev().map(Piece::reversed).collect(),
        }
    }

    /// This path followed by `other`.
    pub fn then(&self, other: &Path) -> Path {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().copied());
        Path { pieces }
    }

    /// Traverse the loop `k` times.
    pub fn repeated(&self, k: usize) -> Path {
        Path {
            pieces: (0..k).flat_map(|_| self.pieces.iter().copied()).collect(),
        }
    }
}

/// A petal: straight out from the basepoint, once around a small circle
/// counterclockwise, straight back.
pub fn petal(base: Complex64, center: Complex64, radius: f64) -> Path {
    let dir = (base - center) / (base - center).norm();
    let entry = center + dir * radius;
    Path {
        pieces: vec![
            Piece::segment(base, entry),
            Piece::Arc {
                center: pair(center),
                radius,
                start_angle: dir.arg(),
                sweep: TAU,
            },
            Piece::segment(entry, base),
        ],
    }
}

fn dist_to_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopSystem {
    pub basepoint: (f64, f64),
    /// Branch values in loop order.
    pub branch_values: Vec<(f64, f64)>,
    /// Index into the caller's list for each loop.
    pub order: Vec<usize>,
    pub radii: Vec<f64>,
    pub arcs: Vec<Path>,
    pub seed: u64,
}

impl LoopSystem {
    /// All petals in order: homotopic to one counterclockwise circle around
    /// every branch value.
    pub fn composite(&self) -> Path {
        self.arcs
            .iter()
            .skip(1)
            .fold(self.arcs[0].clone(), |acc, a| acc.then(a))
    }
}

/// Counterclockwise angle of `v` measured from the upward direction, in
/// `[0, 2 pi)`.
pub(crate) fn angle_from_up(v: Complex64) -> f64 {
    (v.arg() - FRAC_PI_2).rem_euclid(TAU)
}

/// Petal loops around each branch value, ordered counterclockwise as seen
/// from the basepoint starting from the upward direction, ties broken by
/// distance. Radii keep each small circle away from the other branch values
/// and from the other petals' stems. `seed` is recorded; the construction
/// itself is deterministic.
pub fn loop_system(values: &[Complex64], base: Complex64, seed: u64) -> Result<LoopSystem, TrackError> {
    for (i, a) in values.iter().enumerate() {
        if (a - base).norm() == 0.0 {
            return Err(TrackError::Coincident("basepoint is a branch value".into()));
        }
        for b in &values[i + 1..] {
            if (a - b).norm() == 0.0 {
                return Err(TrackError::Coincident(format!("branch value {a} repeated")));
            }
        }
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| {
        let (ai, aj) = (angle_from_up(values[i] - base), angle_from_up(values[j] - base));
        ai.partial_cmp(&aj)
            .unwrap()
            .then((values[i] - base).norm().partial_cmp(&(values[j] - base).norm()).unwrap())
    });
    let mut radii = Vec::with_capacity(values.len());
    for &i in &order {
        let v = values[i];
        let mut r = 0.25 * (v - base).norm();
        for (j, &w) in values.iter().enumerate() {
            if j != i {
                r = r.min(0.3 * (v - w).norm());
                r = r.min(0.3 * dist_to_segment(v, base, w));
            }
        }
        radii.push(r);
    }
    let arcs = order
        .iter()
        .zip(&radii)
        .map(|(&i, &r)| petal(base, values[i], r))
        .collect();
    Ok(LoopSystem {
        basepoint: pair(base),
        branch_values: order.iter().map(|&i| pair(values[i])).collect(),
        order,
        radii,
        arcs,
        seed,
    })
}

/// Standard generators of the fundamental group of a punctured fiber with
/// the basepoint far up in the rotated coordinate `e^{-i theta} y`: go
/// across above all punctures, straight down to just above puncture `j`,
/// once around it counterclockwise, and back the same way. Returned in
/// left-to-right order of the rotated real part.
pub fn fiber_generators(roots: &[Complex64], theta: f64) -> (Complex64, Vec<Path>) {
    let rot = Complex64::from_polar(1.0, theta);
    let u: Vec<Complex64> = roots.iter().map(|r| r / rot).collect();
    let mut order: Vec<usize> = (0..u.len()).collect();
    order.sort_by(|&i, &j| u[i].re.partial_cmp(&u[j].re).unwrap());
    let spread = u
        .iter()
        .flat_map(|a| u.iter().map(move |b| (a - b).norm()))
        .fold(1.0, f64::max);
    let top = u.iter().map(|z| z.im).fold(f64::MIN, f64::max) + spread;
    let mid = u.iter().map(|z| z.re).sum::<f64>() / u.len().max(1) as f64;
    let base_u = Complex64::new(mid, top);
    let arcs = order
        .iter()
        .map(|&i| {
            let p = u[i];
            let mut r = 0.25 * spread;
            for (j, q) in u.iter().enumerate() {
                if j != i {
                    r = r.min(0.3 * (p - q).norm());
                    // stay clear of the vertical stem through the neighbour
                    r = r.min(0.45 * (p.re - q.re).abs().max(1e-300));
                }
            }
            let above = Complex64::new(p.re, top);
            let entry = p + Complex64::new(0.0, r);
            let pieces = vec![
                Piece::segment(base_u * rot, above * rot),
                Piece::segment(above * rot, entry * rot),
                Piece::Arc {
                    center: pair(p * rot),
                    radius: r,
                    start_angle: FRAC_PI_2 + theta,
                    sweep: TAU,
                },
                Piece::segment(entry * rot, above * rot),
                Piece::segment(above * rot, base_u * rot),
            ];
            Path { pieces }
        })
        .collect();
    (base_u * rot, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_value() {
        let ls = loop_system(&[z(0.0, 0.0)], z(0.0, 5.0), 1).unwrap();
        assert_eq!(ls.arcs.len(), 1);
        assert_eq!(ls.composite(), ls.arcs[0]);
        assert!((ls.arcs[0].start() - z(0.0, 5.0)).norm() < 1e-12);
        assert!((ls.arcs[0].end() - z(0.0, 5.0)).norm() < 1e-12);
    }

    #[test]
    fn petals_ordered_by_angle() {
        let vals: Vec<Complex64> = (0..6)
            .map(|k| Complex64::from_polar(1.0, k as f64 * TAU / 6.0 + 0.1))
            .collect();
        let base = z(0.05, -0.02);
        let ls = loop_system(&vals, base, 7).unwrap();
        let angles: Vec<f64> = ls
            .branch_values
            .iter()
            .map(|&(x, y)| angle_from_up(z(x, y) - base))
            .collect();
        assert!(angles.windows(2).all(|w| w[0] < w[1]));
        let again = loop_system(&vals, base, 7).unwrap();
        assert_eq!(ls.arcs, again.arcs);
    }

    #[test]
    fn coincident_values_rejected() {
        assert!(loop_system(&[z(1.0, 0.0), z(1.0, 0.0)], z(0.0, 3.0), 0).is_err());
    }

    #[test]
    fn reversal_and_closure() {
        let ls = loop_system(&[z(0.0, 0.0), z(2.0, 0.0)], z(1.0, 3.0), 0).unwrap();
        let p = ls.composite();
        let r = p.reversed();
        assert!((r.start() - p.end()).norm() < 1e-12);
        assert!((r.eval(0.3).0 - p.eval(p.len() - 0.3).0).norm() < 1e-12);
    }

    #[test]
    fn fiber_generator_order() {
        let roots = [z(2.0, 0.0), z(-1.0, 1.0), z(0.5, -1.0)];
        let (base, arcs) = fiber_generators(&roots, 0.0);
        assert!(base.im > 1.0);
        // first generator goes around the leftmost root
        let centre = match arcs[0].pieces[2] {
            Piece::Arc { center, .. } => center,
            _ => unreachable!(),
        };
        assert!((c(centre) - z(-1.0, 1.0)).norm() < 1e-12);
    }
}
