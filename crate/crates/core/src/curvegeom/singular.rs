//! Singular points of plane curves: location, certification, classification.
//!
//! A random integer change of coordinates puts the curve in general
//! position with respect to the vertical projection from `(0:1:0)`. The
//! resultant `D(x) = Res_y(F, F_y)` then vanishes at the abscissa of every
//! singular point to order at least two (node 2, cusp 3), and to order one at
//! plain vertical tangencies. Roots of the repeated factors of `D` are found
//! numerically, each fiber is searched for its unique singular point, and
//! the point is mapped back and classified from its 2- and 3-jets.

use std::collections::HashMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CurveError, PlaneCurve};
use crate::exactpoly::{rat, ratio_to_f64, resultant, squarefree_decomposition, Polynomial};
use crate::numeric::{aberth, exact_roots, rationalize, FloatPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SingKind {
    Node,
    Cusp,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative residual below which a partial derivative counts as zero.
    pub residual: f64,
    /// Relative singular-value threshold for jet rank decisions.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-10,
            rank: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    /// Projective coordinates scaled so the largest has modulus one.
    pub location: [Complex64; 3],
    /// The same point with exact rational coordinates, when it has them.
    pub exact: Option<[BigRational; 3]>,
    pub kind: SingKind,
    /// Radius of a ball around `location` known to contain the point.
    pub radius: f64,
    /// Order of vanishing of the curve at the point.
    pub multiplicity: u32,
    /// Number of distinct lines in the tangent cone.
    pub tangents: u32,
}

/// Partial derivatives of the defining form up to order three, with
/// higher orders computed on demand.
pub struct CurveJets {
    f: Polynomial,
    cache: std::cell::RefCell<HashMap<[u32; 3], (Polynomial, FloatPoly)>>,
}

impl CurveJets {
    pub fn new(c: &PlaneCurve) -> Self {
        CurveJets {
            f: c.defining().clone(),
            cache: Default::default(),
        }
    }

    /// `d^a/dx0^a d^b/dx1^b d^c/dx2^c F` with `orders = [a, b, c]`.
    pub fn partial(&self, orders: [u32; 3]) -> (Polynomial, FloatPoly) {
        if let Some(v) = self.cache.borrow().get(&orders) {
            return v.clone();
        }
        let mut p = self.f.clone();
        for (i, &k) in orders.iter().enumerate() {
            for _ in 0..k {
                p = p.derivative(i);
            }
        }
        let fp = FloatPoly::new(&p);
        self.cache.borrow_mut().insert(orders, (p.clone(), fp.clone()));
        (p, fp)
    }

    fn float(&self, orders: [u32; 3]) -> FloatPoly {
        self.partial(orders).1
    }
}

fn unit(i: usize) -> [u32; 3] {
    let mut e = [0; 3];
    e[i] = 1;
    e
}

fn orders2(i: usize, j: usize) -> [u32; 3] {
    let mut e = [0; 3];
    e[i] += 1;
    e[j] += 1;
    e
}

fn orders_ab(a: usize, b: usize, na: u32, nb: u32) -> [u32; 3] {
    let mut e = [0; 3];
    e[a] += na;
    e[b] += nb;
    e
}

/// Size of the gradient at `p` relative to the term magnitudes of all three
/// partials together.
fn gradient_residual(jets: &CurveJets, p: &[Complex64; 3]) -> f64 {
    let mut value: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..3 {
        let d = jets.float(unit(i));
        value = value.max(d.eval(p).norm());
        scale = scale.max(d.abs_eval(p));
    }
    if scale == 0.0 {
        0.0
    } else {
        value / scale
    }
}

fn chart(p: &[Complex64; 3]) -> (usize, usize, usize) {
    let k = (0..3)
        .max_by(|&i, &j| p[i].norm().partial_cmp(&p[j].norm()).unwrap())
        .unwrap();
    (k, (k + 1) % 3, (k + 2) % 3)
}

fn normalize_point(p: [Complex64; 3]) -> [Complex64; 3] {
    let (k, _, _) = chart(&p);
    let s = p[k];
    [p[0] / s, p[1] / s, p[2] / s]
}

/// Local type at a point already known to be singular.
#[derive(Clone, Copy, Debug)]
struct Local {
    kind: SingKind,
    multiplicity: u32,
    tangents: u32,
}

/// Singular values of a complex symmetric 2x2 matrix.
fn singular_values(h: [[Complex64; 2]; 2]) -> (f64, f64) {
    let fro2: f64 = h.iter().flatten().map(|z| z.norm_sqr()).sum();
    let det = (h[0][0] * h[1][1] - h[0][1] * h[1][0]).norm();
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let s1 = ((fro2 + disc) / 2.0).sqrt();
    let s2 = if s1 > 0.0 { det / s1 } else { 0.0 };
    (s1, s2)
}

fn local_type(jets: &CurveJets, p: &[Complex64; 3], tol: &Tolerances, degree: u32) -> Local {
    let (_, a, b) = chart(p);
    let h2 = |i, j| {
        let d = jets.float(orders2(i, j));
        (d.eval(p), d.abs_eval(p))
    };
    let (haa, saa) = h2(a, a);
    let (hab, sab) = h2(a, b);
    let (hbb, sbb) = h2(b, b);
    let scale2 = saa.max(sab).max(sbb);
    let (s1, s2) = singular_values([[haa, hab], [hab, hbb]]);
    if s1 > tol.rank * scale2 {
        if s2 > tol.rank * s1 {
            return Local {
                kind: SingKind::Node,
                multiplicity: 2,
                tangents: 2,
            };
        }
        // kernel of the rank-one Hessian
        let k = if haa.norm() >= hbb.norm() {
            [-hab, haa]
        } else {
            [hbb, -hab]
        };
        let nk = (k[0].norm_sqr() + k[1].norm_sqr()).sqrt();
        let k = [k[0] / nk, k[1] / nk];
        let mut cubic = Complex64::zero();
        let mut scale3 = 0.0;
        for (na, binom) in [(3u32, 1.0), (2, 3.0), (1, 3.0), (0, 1.0)] {
            let d = jets.float(orders_ab(a, b, na, 3 - na));
            let mono = k[0].powu(na) * k[1].powu(3 - na);
            cubic += d.eval(p) * mono * binom;
            scale3 += d.abs_eval(p) * binom;
        }
        let kind = if cubic.norm() > tol.rank * scale3 {
            SingKind::Cusp
        } else {
            SingKind::Other
        };
        return Local {
            kind,
            multiplicity: 2,
            tangents: 1,
        };
    }
    // vanishing 2-jet: find the first nonzero jet and count its lines
    for j in 3..=degree {
        let coeffs: Vec<(Complex64, f64)> = (0..=j)
            .map(|na| {
                let d = jets.float(orders_ab(a, b, na, j - na));
                let c = binomial(j, na);
                (d.eval(p) * c, d.abs_eval(p) * c)
            })
            .collect();
        let scale = coeffs.iter().map(|c| c.1).fold(0.0, f64::max);
        let big = coeffs.iter().map(|c| c.0.norm()).fold(0.0, f64::max);
        if big > tol.rank * scale {
            return Local {
                kind: SingKind::Other,
                multiplicity: j,
                tangents: distinct_lines(&coeffs.iter().map(|c| c.0).collect::<Vec<_>>(), big),
            };
        }
    }
    Local {
        kind: SingKind::Other,
        multiplicity: degree,
        tangents: 0,
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Distinct roots in P^1 of the binary form `sum c[i] s^i t^(j-i)`.
fn distinct_lines(c: &[Complex64], scale: f64) -> u32 {
    let j = c.len() - 1;
    let mut deg = j;
    while deg > 0 && c[deg].norm() <= 1e-8 * scale {
        deg -= 1;
    }
    let at_infinity = (j > deg) as u32;
    let roots = aberth::roots(&c[..=deg]).unwrap_or_default();
    let mut reps: Vec<Complex64> = Vec::new();
    for r in roots {
        if !reps
            .iter()
            .any(|q| (q - r).norm() <= 1e-4 * (1.0 + r.norm()))
        {
            reps.push(r);
        }
    }
    reps.len() as u32 + at_infinity
}

/// Exact type at a rational singular point.
fn local_type_exact(jets: &CurveJets, p: &[BigRational; 3], degree: u32) -> Local {
    let k = (0..3).find(|&i| !p[i].is_zero()).unwrap();
    let (a, b) = ((k + 1) % 3, (k + 2) % 3);
    let ev = |o: [u32; 3]| {
        let d = jets.partial(o).0;
        if d.is_zero() {
            BigRational::zero()
        } else {
            d.evaluate(p)
        }
    };
    let (haa, hab, hbb) = (ev(orders2(a, a)), ev(orders2(a, b)), ev(orders2(b, b)));
    let det = &haa * &hbb - &hab * &hab;
    if !det.is_zero() {
        return Local {
            kind: SingKind::Node,
            multiplicity: 2,
            tangents: 2,
        };
    }
    if !(haa.is_zero() && hab.is_zero() && hbb.is_zero()) {
        let kv = if !haa.is_zero() || !hab.is_zero() {
            [-hab.clone(), haa.clone()]
        } else {
            [hbb.clone(), -hab.clone()]
        };
        let mut cubic = BigRational::zero();
        for (na, binom) in [(3u32, 1), (2, 3), (1, 3), (0, 1)] {
            let d = ev(orders_ab(a, b, na, 3 - na));
            let mono = num_traits::pow(kv[0].clone(), na as usize)
                * num_traits::pow(kv[1].clone(), (3 - na) as usize);
            cubic += d * mono * rat(binom);
        }
        return Local {
            kind: if cubic.is_zero() {
                SingKind::Other
            } else {
                SingKind::Cusp
            },
            multiplicity: 2,
            tangents: 1,
        };
    }
    // fall back to the numeric analysis of the higher jets
    let pf = [
        Complex64::new(ratio_to_f64(&p[0]), 0.0),
        Complex64::new(ratio_to_f64(&p[1]), 0.0),
        Complex64::new(ratio_to_f64(&p[2]), 0.0),
    ];
    local_type(jets, &normalize_point(pf), &Tolerances::default(), degree)
}

/// Node, cusp or worse at a point where the curve is singular.
pub fn classify_singularity(c: &PlaneCurve, p: &[Complex64; 3]) -> Result<SingKind, CurveError> {
    let jets = CurveJets::new(c);
    let p = normalize_point(*p);
    let tol = Tolerances::default();
    let res = gradient_residual(&jets, &p).max({
        let f = FloatPoly::new(c.defining());
        let s = f.abs_eval(&p);
        if s == 0.0 {
            0.0
        } else {
            f.eval(&p).norm() / s
        }
    });
    if res > tol.residual {
        return Err(CurveError::NotSingular(res));
    }
    Ok(local_type(&jets, &p, &tol, c.degree()).kind)
}

pub fn singular_points(c: &PlaneCurve) -> Result<Vec<SingularPoint>, CurveError> {
    singular_points_with(c, &Tolerances::default(), 0)
}

pub(crate) fn random_transform(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    loop {
        let mut m = [[0i64; 3]; 3];
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = rng.gen_range(-3..=3);
            }
        }
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det != 0 {
            return m;
        }
    }
}

fn derivative_c(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &a)| a * i as f64)
        .collect()
}

fn eval_abs(c: &[Complex64], z: Complex64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * z.norm() + a.norm())
}

/// Points of the fiber `x = x0` where `g`, `g_x` and the first `m - 1`
/// `y`-derivatives vanish; each with the largest such `m` and the inclusion
/// radius of its `y`-coordinate. Candidates whose residuals are far above
/// the best one are dropped.
fn fiber_singularities(
    gy_coeffs: &[FloatPoly],
    gx_coeffs: &[FloatPoly],
    x0: Complex64,
) -> Vec<(Complex64, u32, f64)> {
    let pt = [x0, Complex64::zero(), Complex64::zero()];
    let g: Vec<Complex64> = gy_coeffs.iter().map(|c| c.eval(&pt)).collect();
    let gx: Vec<Complex64> = gx_coeffs.iter().map(|c| c.eval(&pt)).collect();
    let n = g.len() - 1;
    let mut derivs = vec![g.clone()];
    for _ in 1..n {
        let d = derivative_c(derivs.last().unwrap());
        derivs.push(d);
    }
    let loose = 1e-6;
    let relative = |d: &[Complex64], y| aberth::eval(d, y).norm() / eval_abs(d, y).max(f64::MIN_POSITIVE);
    // (y, multiplicity, radius, residual of g and g_x)
    let mut found: Vec<(Complex64, u32, f64, f64)> = Vec::new();
    for m in 2..=n as u32 {
        let h = &derivs[m as usize - 1];
        let Some(rs) = aberth::roots(h) else { continue };
        for y in rs {
            let y = aberth::polish(h, y, 4);
            let ok = derivs[..m as usize - 1]
                .iter()
                .chain(std::iter::once(&gx))
                .all(|d| relative(d, y) <= loose);
            if !ok {
                continue;
            }
            let r = aberth::inclusion_radius(h, y);
            let score = relative(&g, y).max(relative(&gx, y));
            match found
                .iter_mut()
                .find(|(q, ..)| (q - y).norm() <= 1e-5 * (1.0 + y.norm()))
            {
                Some(slot) => {
                    if m > slot.1 {
                        *slot = (y, m, r, slot.3.min(score));
                    }
                }
                None => found.push((y, m, r, score)),
            }
        }
    }
    let best = found.iter().map(|f| f.3).fold(f64::INFINITY, f64::min);
    found
        .into_iter()
        .filter(|f| f.3 <= 1e4 * best.max(1e-15))
        .map(|(y, m, r, _)| (y, m, r))
        .collect()
}

/// Newton refinement of a nondegenerate critical point of the affine curve.
fn refine_node(g: &[FloatPoly; 5], x: Complex64, y: Complex64) -> (Complex64, Complex64) {
    let (mut x, mut y) = (x, y);
    for _ in 0..4 {
        let pt = [x, y, Complex64::zero()];
        let (fx, fy) = (g[0].eval(&pt), g[1].eval(&pt));
        let (fxx, fxy, fyy) = (g[2].eval(&pt), g[3].eval(&pt), g[4].eval(&pt));
        let det = fxx * fyy - fxy * fxy;
        if det.norm() == 0.0 {
            break;
        }
        let dx = (fyy * fx - fxy * fy) / det;
        let dy = (fxx * fy - fxy * fx) / det;
        if !(dx.re.is_finite() && dy.re.is_finite()) {
            break;
        }
        x -= dx;
        y -= dy;
        if dx.norm() + dy.norm() <= 1e-16 * (x.norm() + y.norm()) {
            break;
        }
    }
    (x, y)
}

fn try_exact(jets: &CurveJets, p: &[Complex64; 3]) -> Option<[BigRational; 3]> {
    if p.iter().any(|z| z.im.abs() > 1e-9) {
        return None;
    }
    let q: Vec<BigRational> = p
        .iter()
        .map(|z| rationalize(z.re, 10_000))
        .collect::<Option<_>>()?;
    let q = [q[0].clone(), q[1].clone(), q[2].clone()];
    let vanishes = (0..3).all(|i| {
        let d = jets.partial(unit(i)).0;
        d.is_zero() || d.evaluate(&q).is_zero()
    });
    vanishes.then_some(q)
}

/// All singular points, with a seed for the random coordinate change.
pub fn singular_points_with(
    c: &PlaneCurve,
    tol: &Tolerances,
    seed: u64,
) -> Result<Vec<SingularPoint>, CurveError> {
    let n = c.degree();
    if n < 2 {
        return Ok(vec![]);
    }
    let jets = CurveJets::new(c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::from("no attempt");
    for _ in 0..20 {
        let m = random_transform(&mut rng);
        match attempt(c, &jets, &m, tol) {
            Ok(points) => return Ok(points),
            Err(why) => last = why,
        }
    }
    Err(CurveError::Certification(last))
}

fn attempt(
    c: &PlaneCurve,
    jets: &CurveJets,
    m: &[[i64; 3]; 3],
    tol: &Tolerances,
) -> Result<Vec<SingularPoint>, String> {
    let n = c.degree();
    let vars = c.defining().vars().to_vec();
    let images: Vec<Polynomial> = (0..3)
        .map(|i| {
            (0..3).fold(Polynomial::zero(&vars), |acc, j| {
                &acc + &Polynomial::var(&vars, j).scale(&rat(m[i][j]))
            })
        })
        .collect();
    let big_g = c.defining().substitute_all(&images);
    if big_g.degree_in(1) < n {
        return Err("projection center lies on the curve".into());
    }
    let g = crate::numeric::normalize(&big_g.set_var_one(2));
    let gy = g.derivative(1);
    let d = resultant(&g, &gy, &vars[1]).map_err(|e| e.to_string())?;
    if d.degree_in(0) != n * (n - 1) {
        return Err("singular point or tangency at infinity".into());
    }
    let gy_coeffs: Vec<FloatPoly> = g.coefficients_in(1).iter().map(FloatPoly::new).collect();
    let gx_coeffs: Vec<FloatPoly> = g
        .derivative(0)
        .coefficients_in(1)
        .iter()
        .map(FloatPoly::new)
        .collect();
    let node_sys = [
        FloatPoly::new(&g.derivative(0)),
        FloatPoly::new(&gy),
        FloatPoly::new(&g.derivative(0).derivative(0)),
        FloatPoly::new(&g.derivative(0).derivative(1)),
        FloatPoly::new(&gy.derivative(1)),
    ];
    let mnorm = m
        .iter()
        .map(|r| r.iter().map(|e| e.abs()).sum::<i64>())
        .max()
        .unwrap() as f64;

    let mut out: Vec<SingularPoint> = Vec::new();
    for (factor, k) in squarefree_decomposition(&d) {
        if k < 2 {
            continue;
        }
        let coeffs = factor.to_univariate(0).ok_or("resultant is not univariate")?;
        let roots = exact_roots(&coeffs).ok_or("roots of the discriminant could not be isolated")?;
        for (x0, rx) in roots {
            let fiber = fiber_singularities(&gy_coeffs, &gx_coeffs, x0);
            let (y0, mult, ry) = match fiber.as_slice() {
                [one] => *one,
                [] => return Err("repeated discriminant root without singular point".into()),
                _ => return Err("two singular points share a fiber".into()),
            };
            let (x1, y1) = if mult == 2 {
                let (x1, y1) = refine_node(&node_sys, x0, y0);
                let moved = (x1 - x0).norm() + (y1 - y0).norm();
                if moved <= 1e-8 * (1.0 + x0.norm() + y0.norm()) {
                    (x1, y1)
                } else {
                    (x0, y0)
                }
            } else {
                (x0, y0)
            };
            let q = [x1, y1, Complex64::new(1.0, 0.0)];
            let raw = [0, 1, 2].map(|i| {
                (0..3).fold(Complex64::zero(), |acc, j| acc + q[j] * m[i][j] as f64)
            });
            let (kk, _, _) = chart(&raw);
            let p = normalize_point(raw);
            let radius = mnorm * (rx + ry) * (1.0 + q[0].norm() + q[1].norm()) / raw[kk].norm();
            let exact = try_exact(jets, &p);
            let local = match &exact {
                Some(e) => {
                    let k0 = (0..3)
                        .max_by(|&i, &j| {
                            ratio_to_f64(&e[i]).abs().partial_cmp(&ratio_to_f64(&e[j]).abs()).unwrap()
                        })
                        .unwrap();
                    let s = e[k0].clone();
                    local_type_exact(jets, &[&e[0] / &s, &e[1] / &s, &e[2] / &s], n)
                }
                None => {
                    if gradient_residual(jets, &p) > tol.residual {
                        return Err(format!(
                            "residual {:e} above tolerance",
                            gradient_residual(jets, &p)
                        ));
                    }
                    local_type(jets, &p, tol, n)
                }
            };
            let expected = match local.kind {
                SingKind::Node => k == 2,
                SingKind::Cusp => k == 3,
                SingKind::Other => k >= 4,
            };
            if !expected {
                return Err("discriminant multiplicity disagrees with local type".into());
            }
            let exact = exact.map(|e| {
                let k0 = (0..3)
                    .max_by(|&i, &j| {
                        ratio_to_f64(&e[i]).abs().partial_cmp(&ratio_to_f64(&e[j]).abs()).unwrap()
                    })
                    .unwrap();
                let s = e[k0].clone();
                [&e[0] / &s, &e[1] / &s, &e[2] / &s]
            });
            let radius = if exact.is_some() { 0.0 } else { radius };
            out.push(SingularPoint {
                location: p,
                exact,
                kind: local.kind,
                radius,
                multiplicity: local.multiplicity,
                tangents: local.tangents,
            });
        }
    }
    // isolation: balls must be pairwise disjoint with room to spare
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let dist = (0..3)
                .map(|k| (out[i].location[k] - out[j].location[k]).norm())
                .fold(0.0, f64::max);
            if dist <= 2.0 * (out[i].radius + out[j].radius) {
                return Err("singular points not isolated".into());
            }
        }
    }
    out.sort_by(|a, b| {
        a.kind.cmp(&b.kind).then_with(|| {
            let key = |p: &SingularPoint| [p.location[0].re, p.location[0].im, p.location[1].re, p.location[1].im, p.location[2].re, p.location[2].im];
            key(a).partial_cmp(&key(b)).unwrap()
        })
    });
    Ok(out)
}

/// JSON view of a singular point: coordinates as decimal (or exact
/// rational) strings plus the certified radius.
#[derive(Clone, Debug, Serialize)]
pub struct SingularPointReport {
    pub kind: SingKind,
    pub location: Vec<String>,
    pub radius: f64,
    pub exact: bool,
    pub multiplicity: u32,
    pub tangents: u32,
}

impl SingularPoint {
    pub fn coordinate_strings(&self) -> Vec<String> {
        match &self.exact {
            Some(e) => e.iter().map(|q| q.to_string()).collect(),
            None => self.location.iter().map(|z| format_complex(*z)).collect(),
        }
    }

    pub fn report(&self) -> SingularPointReport {
        SingularPointReport {
            kind: self.kind,
            location: self.coordinate_strings(),
            radius: self.radius,
            exact: self.exact.is_some(),
            multiplicity: self.multiplicity,
            tangents: self.tangents,
        }
    }
}

pub(crate) fn format_complex(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-300 { 0.0 } else { x };
    format!("{:.15e}{:+.15e}i", clean(z.re), clean(z.im))
}

/// Order of contact of each branch tangent with the curve at a node
/// (3 for an ordinary branch, more when the branch has an inflexion there).
pub(crate) fn node_branch_contacts(c: &PlaneCurve, jets: &CurveJets, p: &[Complex64; 3]) -> Vec<u32> {
    let tol = Tolerances::default();
    let (k, a, b) = chart(p);
    let q = [p[0] / p[k], p[1] / p[k], p[2] / p[k]];
    let h = |na: u32| jets.float(orders_ab(a, b, na, 2 - na)).eval(&q);
    // tangent directions (s : t) with haa s^2 + 2 hab s t + hbb t^2 = 0
    let form = [h(0), h(1) * 2.0, h(2)];
    let scale = form.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut dirs: Vec<[Complex64; 2]> = Vec::new();
    if form[2].norm() <= 1e-12 * scale {
        dirs.push([Complex64::one(), Complex64::zero()]);
        if form[1].norm() > 1e-12 * scale {
            dirs.push([-form[0] / form[1], Complex64::one()]);
        }
    } else {
        for r in aberth::roots(&form).unwrap_or_default() {
            dirs.push([r, Complex64::one()]);
        }
    }
    dirs.iter()
        .map(|v| {
            for j in 3..=c.degree() {
                let mut val = Complex64::zero();
                let mut sc = 0.0;
                for na in 0..=j {
                    let d = jets.float(orders_ab(a, b, na, j - na));
                    let bin = binomial(j, na);
                    let mono = v[0].powu(na) * v[1].powu(j - na);
                    val += d.eval(&q) * mono * bin;
                    sc += d.abs_eval(&q) * mono.norm() * bin;
                }
                if val.norm() > tol.rank * sc {
                    return j;
                }
            }
            c.degree() + 1
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvegeom::Plane;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::parse(s, Plane::Source).unwrap()
    }

    fn origin() -> [Complex64; 3] {
        [Complex64::zero(), Complex64::zero(), Complex64::one()]
    }

    #[test]
    fn classify_normal_forms() {
        assert_eq!(classify_singularity(&curve("y^2*z - x^2*z - x^3"), &origin()).unwrap(), SingKind::Node);
        assert_eq!(classify_singularity(&curve("y^2*z - x^3"), &origin()).unwrap(), SingKind::Cusp);
        assert_eq!(classify_singularity(&curve("y^2*z^2 - x^4"), &origin()).unwrap(), SingKind::Other);
    }

    #[test]
    fn classify_rejects_smooth_point() {
        let c = curve("y^2*z - x^3");
        let p = [Complex64::one(), Complex64::one(), Complex64::one()];
        assert!(matches!(classify_singularity(&c, &p), Err(CurveError::NotSingular(_))));
    }

    #[test]
    fn smooth_cubic_has_none() {
        assert!(singular_points(&curve("x^3 + y^3 + z^3")).unwrap().is_empty());
    }

    #[test]
    fn nodal_cubic_node_is_exact() {
        let pts = singular_points(&curve("z*y^2 - x^2*(x+z)")).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].kind, SingKind::Node);
        assert_eq!(pts[0].exact, Some([rat(0), rat(0), rat(1)]));
        assert_eq!(pts[0].radius, 0.0);
    }

    #[test]
    fn cuspidal_curves() {
        // cuspidal cubic
        let pts = singular_points(&curve("y^2*z - x^3")).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].kind, SingKind::Cusp);
        // tricuspidal quartic
        let pts = singular_points(&curve("x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x + y + z)")).unwrap();
        assert!(pts.iter().all(|p| p.kind == SingKind::Cusp), "{pts:?}");
        assert_eq!(pts.len(), 3);
    }

    #[test]
    fn tacnode_is_other() {
        let pts = singular_points(&curve("y^2*z^2 - x^4 - y^4")).unwrap();
        assert!(pts.iter().any(|p| p.kind == SingKind::Other && p.tangents == 1));
    }
}
