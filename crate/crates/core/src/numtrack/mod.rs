//! Pencils of lines, branch values and certified root tracking.

pub mod path;
pub mod track;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvegeom::{random_transform, CurveError, Plane, PlaneCurve};
use crate::exactpoly::{discriminant, rat, squarefree_decomposition, Polynomial};
use crate::numeric::exact_roots;

pub use path::{fiber_generators, loop_system, petal, LoopSystem, Path, Piece};
pub use track::{track, Crossing, PolyFamily, Sample, TrackTolerances, TrackedStrands, TRACK_TOLERANCES};

#[derive(Debug, Error)]
pub enum TrackError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("step size underflow at path time {time}")]
    StepUnderflow { time: f64 },
    #[error("certification failed at path time {time}: {detail}")]
    Certification { time: f64, detail: String },
    #[error("coincident points: {0}")]
    Coincident(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("no generic pencil found after {0} attempts: {1}")]
    NotGeneric(usize, String),
}

const FRAME_ATTEMPTS: usize = 20;

/// A pencil of lines with integer frame `M`: the line with parameter `t`
/// is spanned by the center `M e_2` and the point `M (t, 0, 1)`, and its
/// points are `M (t, y, 1)` with the center at `y = infinity`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PencilFrame {
    pub plane: Plane,
    pub matrix: [[i64; 3]; 3],
    /// Parameter of the base fiber.
    pub basepoint: (f64, f64),
    /// Strands are ordered left to right along `e^{i direction}`.
    pub direction: f64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchValue {
    pub value: Complex64,
    /// Order of vanishing of the fiber discriminant: 1 for a simple
    /// tangent, 2 for a node, 3 for a cusp.
    pub multiplicity: u32,
    pub radius: f64,
}

impl PencilFrame {
    pub fn center(&self) -> [i64; 3] {
        [self.matrix[0][1], self.matrix[1][1], self.matrix[2][1]]
    }

    pub fn base(&self) -> Complex64 {
        Complex64::new(self.basepoint.0, self.basepoint.1)
    }

    pub fn point(&self, t: Complex64, y: Complex64) -> [Complex64; 3] {
        let m = &self.matrix;
        std::array::from_fn(|i| t * m[i][0] as f64 + y * m[i][1] as f64 + m[i][2] as f64)
    }

    /// `F(M (t, y, 1))` in the variables `t, y`.
    pub fn fiber_polynomial(&self, c: &PlaneCurve) -> Polynomial {
        let vars = ["t", "y"];
        let t = Polynomial::var(&vars, 0);
        let y = Polynomial::var(&vars, 1);
        let images: Vec<Polynomial> = self
            .matrix
            .iter()
            .map(|row| {
                &(&t.scale(&rat(row[0])) + &y.scale(&rat(row[1]))) + &Polynomial::constant(&vars, rat(row[2]))
            })
            .collect();
        c.defining().substitute_all(&images)
    }

    pub fn family(&self, c: &PlaneCurve) -> Result<PolyFamily, TrackError> {
        self.check_plane(c)?;
        PolyFamily::new(&self.fiber_polynomial(c), 0, 1)
    }

    fn check_plane(&self, c: &PlaneCurve) -> Result<(), TrackError> {
        if c.plane() != self.plane {
            return Err(TrackError::Degenerate("frame and curve live in different planes".into()));
        }
        Ok(())
    }
}

/// Coefficients (low to high, scaled) of the restriction of the curve to the
/// pencil line with parameter `t`.
pub fn pencil_fiber(c: &PlaneCurve, frame: &PencilFrame, t: Complex64) -> Result<Vec<Complex64>, TrackError> {
    Ok(frame.family(c)?.at(t))
}

/// Roots of the pencil fiber, left to right along the frame direction.
pub fn fiber_roots(c: &PlaneCurve, frame: &PencilFrame, t: Complex64) -> Result<Vec<Complex64>, TrackError> {
    frame.family(c)?.roots_at(t, frame.direction)
}

/// Roots of the fiber discriminant, with multiplicities, in loop order as
/// seen from the frame's basepoint.
pub fn branch_values(c: &PlaneCurve, frame: &PencilFrame) -> Result<Vec<BranchValue>, TrackError> {
    frame.check_plane(c)?;
    let phi = frame.fiber_polynomial(c);
    let n = c.degree();
    if phi.degree_in(1) != n {
        return Err(TrackError::Degenerate("pencil center lies on the curve".into()));
    }
    let disc = discriminant(&phi, "y").map_err(CurveError::from)?;
    if disc.degree_in(0) != n * (n - 1) {
        return Err(TrackError::Degenerate("the line through the center at infinity is special".into()));
    }
    let mut out = Vec::new();
    for (factor, k) in squarefree_decomposition(&disc) {
        if factor.is_constant() {
            continue;
        }
        let coeffs = factor.to_univariate(0).expect("discriminant is univariate");
        let roots = exact_roots(&coeffs).ok_or_else(|| TrackError::Degenerate("branch value root finding failed".into()))?;
        out.extend(roots.into_iter().map(|(value, radius)| BranchValue {
            value,
            multiplicity: k,
            radius,
        }));
    }
    let values: Vec<Complex64> = out.iter().map(|b| b.value).collect();
    let ls = loop_system(&values, frame.base(), frame.seed)?;
    Ok(ls.order.iter().map(|&i| out[i]).collect())
}

fn well_separated(bv: &[BranchValue]) -> Result<(), String> {
    for (i, a) in bv.iter().enumerate() {
        if a.multiplicity > 3 {
            return Err(format!("discriminant root of multiplicity {}", a.multiplicity));
        }
        for b in &bv[i + 1..] {
            let d = (a.value - b.value).norm();
            if d < 1e-8 * (1.0 + a.value.norm()) || d < 1e3 * (a.radius + b.radius) {
                return Err(format!("branch values {} and {} are not separated", a.value, b.value));
            }
        }
    }
    Ok(())
}

/// A random small-integer pencil whose special lines each carry one event:
/// every discriminant root has multiplicity at most three, the line at
/// infinity is not special, and the numbers of double and triple roots
/// equal the numbers of nodes and cusps of the curve.
pub fn generic_frame(
    c: &PlaneCurve,
    seed: u64,
    nodes: usize,
    cusps: usize,
) -> Result<(PencilFrame, Vec<BranchValue>), TrackError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for _ in 0..FRAME_ATTEMPTS {
        let matrix = random_transform(&mut rng);
        let direction = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut frame = PencilFrame {
            plane: c.plane(),
            matrix,
            basepoint: (0.0, 0.0),
            direction,
            seed,
        };
        // provisional basepoint far away; replaced once the values are known
        frame.basepoint = (0.123, 1e6);
        let bv = match branch_values(c, &frame) {
            Ok(bv) => bv,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        if let Err(e) = well_separated(&bv) {
            last = e;
            continue;
        }
        let count = |k| bv.iter().filter(|b| b.multiplicity == k).count();
        if count(2) != nodes || count(3) != cusps {
            last = format!("{} double and {} triple discriminant roots", count(2), count(3));
            continue;
        }
        let (lo, hi) = bv.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), b| {
            (l.min(b.value.re), h.max(b.value.re))
        });
        let top = bv.iter().map(|b| b.value.im).fold(f64::NEG_INFINITY, f64::max);
        let span = (hi - lo).max(1.0);
        let re = 0.5 * (lo + hi) + span * rng.gen_range(-0.1..0.1);
        let im = top + span * rng.gen_range(0.5..1.0);
        frame.basepoint = (re, im);
        let values: Vec<Complex64> = bv.iter().map(|b| b.value).collect();
        let ls = loop_system(&values, frame.base(), seed)?;
        let ordered = ls.order.iter().map(|&i| bv[i]).collect();
        return Ok((frame, ordered));
    }
    Err(TrackError::NotGeneric(FRAME_ATTEMPTS, last))
}

/// Track the fiber roots of `c` along `path` in the parameter line.
pub fn track_loop(c: &PlaneCurve, frame: &PencilFrame, path: &Path) -> Result<TrackedStrands, TrackError> {
    let fam = frame.family(c)?;
    let start = fam.roots_at(path.start(), frame.direction)?;
    track(&fam, path, &start, frame.direction)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::parse(s, Plane::Source).unwrap()
    }

    #[test]
    fn conic_fiber_is_quadratic() {
        let c = curve("x^2 + y^2 - z^2");
        let (frame, bv) = generic_frame(&c, 3, 0, 0).unwrap();
        assert_eq!(bv.len(), 2);
        let roots = fiber_roots(&c, &frame, Complex64::new(0.31, 0.17)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - roots[1]).norm() > 1e-3);
    }

    #[test]
    fn smooth_cubic_six_branch_values() {
        let c = curve("x^3 + y^3 + z^3");
        let (frame, bv) = generic_frame(&c, 1, 0, 0).unwrap();
        assert_eq!(bv.len(), 6);
        assert!(bv.iter().all(|b| b.multiplicity == 1));
        // one double root in the fiber over a branch value
        let f = pencil_fiber(&c, &frame, bv[0].value).unwrap();
        let roots = crate::numeric::aberth::roots(&f).unwrap();
        let mut close = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                if (roots[i] - roots[j]).norm() < 1e-5 {
                    close += 1;
                }
            }
        }
        assert_eq!(close, 1);
    }

    #[test]
    fn nodal_cubic_double_root() {
        let c = curve("y^2*z - x^3 - x^2*z");
        let (_, bv) = generic_frame(&c, 2, 1, 0).unwrap();
        assert_eq!(bv.iter().filter(|b| b.multiplicity == 2).count(), 1);
        assert_eq!(bv.iter().filter(|b| b.multiplicity == 1).count(), 4);
    }

    #[test]
    fn frames_are_deterministic() {
        let c = curve("x^3 + y^3 + z^3");
        assert_eq!(generic_frame(&c, 9, 0, 0).unwrap().0, generic_frame(&c, 9, 0, 0).unwrap().0);
    }

    #[test]
    fn full_loop_gives_full_twist() {
        let c = curve("x^3 + y^3 + z^3");
        let (frame, bv) = generic_frame(&c, 5, 0, 0).unwrap();
        let values: Vec<Complex64> = bv.iter().map(|b| b.value).collect();
        let ls = loop_system(&values, frame.base(), 0).unwrap();
        let tr = track_loop(&c, &frame, &ls.composite()).unwrap();
        let sum: i32 = tr.crossings.iter().map(|x| x.sign as i32).sum();
        assert_eq!(sum, 6);
        assert_eq!(tr.permutation, vec![0, 1, 2]);
    }
}
