//! Continuation of the roots of a one-parameter polynomial family along a
//! path, recording how the strands cross.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::path::Path;
use super::TrackError;
use crate::exactpoly::Polynomial;
use crate::numeric::dd::{self, CDd, Dd};
use crate::exactpoly::ratio_to_f64;
use crate::numeric::aberth;

const MAX_STEP: f64 = 0.25;
const MIN_STEP: f64 = 1e-12;
/// Below this step length simultaneous crossings are ordered by their
/// interpolated times instead of being split further.
const MIN_CROSSING_STEP: f64 = 1e-9;
const RESIDUAL: f64 = 1e-12;

/// Thresholds of the tracker, for reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrackTolerances {
    pub residual: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub min_crossing_step: f64,
    /// Certified when the root separation exceeds this multiple of the
    /// largest inclusion radius.
    pub separation_factor: f64,
}

pub const TRACK_TOLERANCES: TrackTolerances = TrackTolerances {
    residual: RESIDUAL,
    min_step: MIN_STEP,
    max_step: MAX_STEP,
    min_crossing_step: MIN_CROSSING_STEP,
    separation_factor: 2.0,
};

/// `f(tau, z) = sum_i c_i(tau) z^i` with polynomial coefficients in
/// `Q(i)[tau]`.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    /// `coeffs[i][e]` multiplies `z^i tau^e`.
    coeffs: Vec<Vec<Complex64>>,
    exact: Vec<Vec<(BigRational, BigRational)>>,
}

fn horner(c: &[Complex64], t: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * t + a)
}

fn horner_derivative(c: &[Complex64], t: Complex64) -> Complex64 {
    c.iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (e, &a)| acc * t + a * e as f64)
}

impl PolyFamily {
    /// Family from a polynomial in which only variables `param` and `z`
    /// occur.
    pub fn new(f: &Polynomial, param: usize, z: usize) -> Result<Self, TrackError> {
        Self::new_complex(f, &Polynomial::zero(f.vars()), param, z)
    }

    /// Family `re + i im`; both parts share one variable list.
    pub fn new_complex(re: &Polynomial, im: &Polynomial, param: usize, z: usize) -> Result<Self, TrackError> {
        for f in [re, im] {
            if f.occurring_vars().iter().any(|&v| v != param && v != z) {
                return Err(TrackError::Degenerate("family depends on extra variables".into()));
            }
        }
        let deg_z = re.degree_in(z).max(im.degree_in(z)) as usize;
        let deg_t = re.degree_in(param).max(im.degree_in(param)) as usize;
        let zero = BigRational::zero();
        let mut exact = vec![vec![(zero.clone(), zero.clone()); deg_t + 1]; deg_z + 1];
        for (m, a) in re.terms() {
            exact[m.0[z] as usize][m.0[param] as usize].0 = a.clone();
        }
        for (m, a) in im.terms() {
            exact[m.0[z] as usize][m.0[param] as usize].1 = a.clone();
        }
        let max = exact
            .iter()
            .flatten()
            .flat_map(|(a, b)| [a.abs(), b.abs()])
            .fold(zero.clone(), |a, b| if b > a { b } else { a });
        if max.is_zero() || deg_z == 0 {
            return Err(TrackError::Degenerate("family has no roots".into()));
        }
        let inv = max.recip();
        for (a, b) in exact.iter_mut().flatten() {
            *a = &*a * &inv;
            *b = &*b * &inv;
        }
        let coeffs = exact
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(a, b)| Complex64::new(ratio_to_f64(a), ratio_to_f64(b)))
                    .collect()
            })
            .collect();
        Ok(PolyFamily { coeffs, exact })
    }

    /// Coefficients, low to high, at `tau`.
    pub fn at(&self, tau: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| horner(c, tau)).collect()
    }

    fn dtau(&self, tau: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| horner_derivative(c, tau)).collect()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn dd_at(&self, tau: Complex64) -> Vec<CDd> {
        let t = CDd::from_c64(tau);
        self.exact
            .iter()
            .map(|row| {
                row.iter().rev().fold(CDd::default(), |acc, (a, b)| {
                    acc.mul(t).add(CDd {
                        re: Dd::from_ratio(a),
                        im: Dd::from_ratio(b),
                    })
                })
            })
            .collect()
    }

    /// All roots at `tau`, in left-to-right order along `direction`.
    pub fn roots_at(&self, tau: Complex64, direction: f64) -> Result<Vec<Complex64>, TrackError> {
        let c = self.at(tau);
        self.check_leading(&c, tau)?;
        let mut r = aberth::roots(&c).ok_or_else(|| TrackError::Degenerate(format!("root finding failed at {tau}")))?;
        for z in r.iter_mut() {
            *z = aberth::polish(&c, *z, 3);
        }
        sort_along(&mut r, direction);
        Ok(r)
    }

    fn check_leading(&self, c: &[Complex64], tau: Complex64) -> Result<(), TrackError> {
        let lead = c.last().unwrap().norm();
        let scale = c.iter().map(|a| a.norm()).fold(0.0, f64::max);
        if !(lead > 1e-12 * scale) {
            return Err(TrackError::Degenerate(format!("fiber degree drops at {tau}")));
        }
        Ok(())
    }
}

fn rotation(direction: f64) -> Complex64 {
    Complex64::from_polar(1.0, -direction)
}

pub fn sort_along(r: &mut [Complex64], direction: f64) {
    let rot = rotation(direction);
    r.sort_by(|a, b| (a * rot).re.partial_cmp(&(b * rot).re).unwrap());
}

fn min_separation(z: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            m = m.min((z[i] - z[j]).norm());
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    /// Path parameter at which the two strands swap.
    pub time_index: usize,
    /// Left position of the swap, 1-based.
    pub position: usize,
    /// Strand moving right, then the strand moving left.
    pub strands: (usize, usize),
    /// `+1` when the strand moving right passes below the other one.
    pub sign: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub time: f64,
    pub param: (f64, f64),
    pub roots: Vec<(f64, f64)>,
    /// Largest inclusion radius over the roots.
    pub radius: f64,
    pub separation: f64,
}

/// Strands followed along a path. Strand `k` starts at `start[k]`; strands
/// are labelled by their starting position, left to right.
#[derive(Clone, Debug)]
pub struct TrackedStrands {
    pub direction: f64,
    pub start: Vec<Complex64>,
    pub end: Vec<Complex64>,
    /// Strand `k` ends at position `permutation[k]`; on a closed path that
    /// is where strand `permutation[k]` started.
    pub permutation: Vec<usize>,
    pub crossings: Vec<Crossing>,
    pub crossing_times: Vec<f64>,
    pub samples: Vec<Sample>,
    /// Samples whose certificate needed double-double residuals.
    pub escalations: usize,
}

impl TrackedStrands {
    /// One JSON object per sample, for debugging.
    pub fn to_jsonl(&self) -> String {
        self.samples
            .iter()
            .map(|s| serde_json::to_string(s).expect("sample serializes"))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn max_radius(&self) -> f64 {
        self.samples.iter().map(|s| s.radius).fold(0.0, f64::max)
    }
}

/// One predictor/corrector step from `s` to `s + h`.
fn step(fam: &PolyFamily, path: &Path, s: f64, h: f64, z: &[Complex64]) -> Option<Vec<Complex64>> {
    let (tau, dtau) = path.eval(s);
    let c = fam.at(tau);
    let dc = fam.dtau(tau);
    let sep = min_separation(z);
    let mut pred = Vec::with_capacity(z.len());
    for &zk in z {
        let (p, dp) = aberth::eval_with_derivative(&c, zk);
        let _ = p;
        let ft = aberth::eval(&dc, zk);
        let v = -(ft * dtau) / dp;
        let dz = v * h;
        if !(dz.norm() <= 0.25 * sep) {
            return None;
        }
        pred.push(zk + dz);
    }
    let (tau1, _) = path.eval(s + h);
    let c1 = fam.at(tau1);
    fam.check_leading(&c1, tau1).ok()?;
    let corr = aberth::iterate(&c1, pred.clone(), 60)?;
    for (a, b) in corr.iter().zip(&pred) {
        if !((a - b).norm() <= 0.25 * sep) {
            return None;
        }
    }
    let scale: Vec<f64> = corr.iter().map(|&w| abs_eval(&c1, w)).collect();
    for (w, sc) in corr.iter().zip(scale) {
        if aberth::eval(&c1, *w).norm() > RESIDUAL * sc {
            return None;
        }
    }
    Some(corr)
}

fn abs_eval(c: &[Complex64], z: Complex64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * z.norm() + a.norm())
}

/// Radii and separation at a sample; escalates to double-double residuals
/// when the double-precision certificate is not conclusive.
fn certify(fam: &PolyFamily, tau: Complex64, z: &mut [Complex64]) -> Result<(f64, f64, bool), String> {
    let c = fam.at(tau);
    let sep = min_separation(z);
    let radius = z
        .iter()
        .map(|&w| aberth::inclusion_radius(&c, w))
        .fold(0.0, f64::max);
    if sep > TRACK_TOLERANCES.separation_factor * radius {
        return Ok((radius, sep, false));
    }
    let cd = fam.dd_at(tau);
    let n = z.len() as f64;
    let mut radius = 0.0f64;
    for w in z.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = dd::eval_with_derivative(&cd, CDd::from_c64(*w));
            let dp = dp.to_c64();
            if dp.norm() == 0.0 {
                break;
            }
            *w -= p.to_c64() / dp;
        }
        let (p, dp) = dd::eval_with_derivative(&cd, CDd::from_c64(*w));
        radius = radius.max(n * p.to_c64().norm() / dp.to_c64().norm());
    }
    let sep = min_separation(z);
    if sep > TRACK_TOLERANCES.separation_factor * radius {
        Ok((radius, sep, true))
    } else {
        Err(format!("separation {sep:.3e} does not exceed twice the radius {radius:.3e}"))
    }
}

fn sample(time: f64, tau: Complex64, z: &[Complex64], radius: f64, sep: f64) -> Sample {
    Sample {
        time,
        param: (tau.re, tau.im),
        roots: z.iter().map(|w| (w.re, w.im)).collect(),
        radius,
        separation: sep,
    }
}

/// Pairs whose left-right order along `direction` differs between two
/// samples, with the interpolated fraction of the step at which they swap.
fn flips(old: &[Complex64], new: &[Complex64], rot: Complex64) -> Vec<(f64, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..old.len() {
        for b in a + 1..old.len() {
            let d0 = (old[a] * rot - old[b] * rot).re;
            let d1 = (new[a] * rot - new[b] * rot).re;
            if (d0 < 0.0) != (d1 < 0.0) {
                out.push((d0 / (d0 - d1), a, b));
            }
        }
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    out
}

/// Follow the roots of `fam` along `path`, starting from `start` (all roots
/// at the start of the path). Crossings are read off in the real direction
/// `e^{i direction}`.
pub fn track(fam: &PolyFamily, path: &Path, start: &[Complex64], direction: f64) -> Result<TrackedStrands, TrackError> {
    let n = fam.degree();
    if start.len() != n {
        return Err(TrackError::Degenerate(format!("expected {n} starting roots, got {}", start.len())));
    }
    let rot = rotation(direction);
    let tau0 = path.start();
    let c0 = fam.at(tau0);
    fam.check_leading(&c0, tau0)?;
    let mut z = aberth::iterate(&c0, start.to_vec(), 200)
        .ok_or_else(|| TrackError::Degenerate("starting roots do not converge".into()))?;
    sort_along(&mut z, direction);
    let start_roots = z.clone();
    let (r0, sep0, esc0) = certify(fam, tau0, &mut z).map_err(|d| TrackError::Certification { time: 0.0, detail: d })?;
    let mut samples = vec![sample(0.0, tau0, &z, r0, sep0)];
    let mut escalations = esc0 as usize;
    // order[p] = strand at position p
    let mut order: Vec<usize> = (0..n).collect();
    let mut crossings = Vec::new();
    let mut crossing_times = Vec::new();

    let len = path.len();
    let (mut s, mut h, mut streak) = (0.0f64, 1.0 / 32.0, 0);
    while s < len {
        let last = len - s <= h;
        let h_try = if last { len - s } else { h };
        if h_try < MIN_STEP {
            return Err(TrackError::StepUnderflow { time: s });
        }
        let Some(mut new) = step(fam, path, s, h_try, &z) else {
            h = h_try / 2.0;
            streak = 0;
            continue;
        };
        let fl = flips(&z, &new, rot);
        if fl.len() > 1 && h_try > MIN_CROSSING_STEP {
            h = h_try / 2.0;
            streak = 0;
            continue;
        }
        for (frac, a, b) in fl {
            let pa = order.iter().position(|&k| k == a).unwrap();
            let pb = order.iter().position(|&k| k == b).unwrap();
            let (p, q) = (pa.min(pb), pa.max(pb));
            if q != p + 1 {
                return Err(TrackError::Degenerate(format!("non-adjacent strands swap near time {s}")));
            }
            let (right_mover, left_mover) = (order[p], order[q]);
            let im = |k: usize| ((z[k] + (new[k] - z[k]) * frac) * rot).im;
            let sign = if im(right_mover) < im(left_mover) { 1 } else { -1 };
            crossings.push(Crossing {
                time_index: samples.len(),
                position: p + 1,
                strands: (right_mover, left_mover),
                sign,
            });
            crossing_times.push(s + frac * h_try);
            order.swap(p, q);
        }
        let s_new = if last { len } else { s + h_try };
        let tau = path.eval(s_new).0;
        let (r, sep, esc) = certify(fam, tau, &mut new).map_err(|d| TrackError::Certification { time: s_new, detail: d })?;
        escalations += esc as usize;
        samples.push(sample(s_new, tau, &new, r, sep));
        z = new;
        s = s_new;
        streak += 1;
        if streak >= 4 {
            h = (2.0 * h).min(MAX_STEP);
            streak = 0;
        }
    }

    // strand k ends at position permutation[k]
    let mut permutation = vec![0; n];
    for (p, &k) in order.iter().enumerate() {
        permutation[k] = p;
    }
    if (path.start() - path.end()).norm() == 0.0 {
        let sep = min_separation(&start_roots);
        for (k, w) in z.iter().enumerate() {
            let (j, d) = start_roots
                .iter()
                .enumerate()
                .map(|(j, r)| (j, (r - w).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            if d > 0.25 * sep || j != permutation[k] {
                return Err(TrackError::Degenerate("crossing record disagrees with the endpoint matching".into()));
            }
        }
    }
    Ok(TrackedStrands {
        direction,
        start: start_roots,
        end: z,
        permutation,
        crossings,
        crossing_times,
        samples,
        escalations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;
    use crate::numtrack::path::loop_system;

    fn family(s: &str) -> PolyFamily {
        PolyFamily::new(&parse_poly(s, &["t", "y"]).unwrap(), 0, 1).unwrap()
    }

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_root_half_twist() {
        // y^2 = t around t = 0: one positive half twist
        let fam = family("y^2 - t");
        let ls = loop_system(&[z(0.0, 0.0)], z(0.0, 1.0), 0).unwrap();
        let start = fam.roots_at(z(0.0, 1.0), 0.0).unwrap();
        let tr = track(&fam, &ls.arcs[0], &start, 0.0).unwrap();
        assert_eq!(tr.permutation, vec![1, 0]);
        assert_eq!(tr.crossings.len(), 1);
        assert_eq!((tr.crossings[0].position, tr.crossings[0].sign), (1, 1));
    }

    #[test]
    fn node_and_cusp_exponents() {
        for (s, e) in [("y^2 - t^2", 2usize), ("y^2 - t^3", 3)] {
            let fam = family(s);
            let ls = loop_system(&[z(0.0, 0.0)], z(0.1, 0.7), 0).unwrap();
            let start = fam.roots_at(z(0.1, 0.7), 0.3).unwrap();
            let tr = track(&fam, &ls.arcs[0], &start, 0.3).unwrap();
            let sum: i32 = tr.crossings.iter().map(|c| c.sign as i32).sum();
            assert_eq!(sum, e as i32, "{s}");
            assert!(tr.crossings.iter().all(|c| c.sign == 1 && c.position == 1));
        }
    }

    #[test]
    fn reversed_loop_inverts() {
        let fam = family("y^3 - 3*y + t");
        let ls = loop_system(&[z(2.0, 0.0), z(-2.0, 0.0)], z(0.3, 1.5), 0).unwrap();
        let start = fam.roots_at(z(0.3, 1.5), 0.2).unwrap();
        let p = ls.composite();
        let fwd = track(&fam, &p, &start, 0.2).unwrap();
        let back = track(&fam, &p.reversed(), &start, 0.2).unwrap();
        let f: Vec<(usize, i8)> = fwd.crossings.iter().map(|c| (c.position, c.sign)).collect();
        let b: Vec<(usize, i8)> = back.crossings.iter().rev().map(|c| (c.position, -c.sign)).collect();
        assert_eq!(f, b);
        let sum: i32 = f.iter().map(|x| x.1 as i32).sum();
        assert_eq!(sum, 2);
    }

    #[test]
    fn close_roots_stay_certified() {
        let fam = family("y^2 - 1/100000000000000*t^2 - 1/100000000000000");
        let ls = loop_system(&[z(0.0, 1.0), z(0.0, -1.0)], z(3.0, 0.2), 0).unwrap();
        let start = fam.roots_at(z(3.0, 0.2), 0.0).unwrap();
        let tr = track(&fam, &ls.composite(), &start, 0.0).unwrap();
        assert!(tr.max_radius() < 1e-6);
    }

    #[test]
    fn escalation_separates_near_double_root() {
        // roots 1/3 and 1/3 + 10^-9: the f64 certificate is inconclusive
        let fam = family("(3*y - 1)*(3*y - 1 - 3/1000000000)");
        let mut r = vec![z(1.0 / 3.0, 0.0), z(1.0 / 3.0 + 1e-9, 0.0)];
        let (radius, sep, escalated) = certify(&fam, z(0.0, 0.0), &mut r).unwrap();
        assert!(escalated);
        assert!(2.0 * radius < sep);
    }
}
