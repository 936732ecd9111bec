//! Floating-point views of exact polynomials and small numeric helpers.

pub mod aberth;
pub mod dd;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::exactpoly::{f64_to_ratio, ratio_to_f64, Polynomial};

/// A polynomial with `f64` coefficients, for repeated complex evaluation.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    terms: Vec<(Vec<u32>, f64)>,
    max_exp: Vec<u32>,
}

impl FloatPoly {
    /// Coefficients are converted one by one; callers normalize first when
    /// the exact coefficients may leave the `f64` range.
    pub fn new(p: &Polynomial) -> Self {
        let n = p.nvars();
        let mut max_exp = vec![0; n];
        let terms = p
            .terms()
            .map(|(m, c)| {
                for (a, &e) in max_exp.iter_mut().zip(&m.0) {
                    *a = (*a).max(e);
                }
                (m.0.clone(), ratio_to_f64(c))
            })
            .collect();
        FloatPoly { terms, max_exp }
    }

    /// Scaled so that the largest coefficient has modulus one.
    pub fn normalized(p: &Polynomial) -> Self {
        Self::new(&normalize(p))
    }

    fn powers(&self, pt: &[Complex64]) -> Vec<Vec<Complex64>> {
        pt.iter()
            .zip(&self.max_exp)
            .map(|(&x, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=m {
                    v.push(acc);
                    acc *= x;
                }
                v
            })
            .collect()
    }

    pub fn eval(&self, pt: &[Complex64]) -> Complex64 {
        let pw = self.powers(pt);
        let mut total = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(*c, 0.0);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= pw[i][k as usize];
                }
            }
            total += t;
        }
        total
    }

    /// Sum of the moduli of the terms at `pt`; the natural scale for
    /// relative residual tests.
    pub fn abs_eval(&self, pt: &[Complex64]) -> f64 {
        let mut total = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.abs();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= pt[i].norm().powi(k as i32);
                }
            }
            total += t;
        }
        total
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Exact rescaling so that the largest coefficient has absolute value one.
pub fn normalize(p: &Polynomial) -> Polynomial {
    let max = p
        .terms()
        .map(|(_, c)| c.abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    if max.is_zero() {
        p.clone()
    } else {
        p.scale(&max.recip())
    }
}

/// Low-to-high complex coefficients of a univariate exact polynomial.
pub fn complex_coeffs(c: &[BigRational]) -> Vec<Complex64> {
    let max = c
        .iter()
        .map(|a| a.abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    c.iter()
        .map(|a| {
            let v = if max.is_zero() { 0.0 } else { ratio_to_f64(&(a / &max)) };
            Complex64::new(v, 0.0)
        })
        .collect()
}

/// Complex number with exact rational parts.
#[derive(Clone, Debug, PartialEq)]
struct QComplex {
    re: BigRational,
    im: BigRational,
}

impl QComplex {
    fn from_f64(z: Complex64) -> Self {
        QComplex {
            re: f64_to_ratio(z.re),
            im: f64_to_ratio(z.im),
        }
    }

    fn to_f64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    fn mul(&self, o: &QComplex) -> QComplex {
        QComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn add_real(&self, r: &BigRational) -> QComplex {
        QComplex {
            re: &self.re + r,
            im: self.im.clone(),
        }
    }
}

/// Value and derivative of an exact univariate polynomial at a point with
/// `f64` parts, evaluated without rounding.
fn exact_eval(c: &[BigRational], z: Complex64) -> (Complex64, Complex64) {
    let q = QComplex::from_f64(z);
    let zero = QComplex {
        re: BigRational::zero(),
        im: BigRational::zero(),
    };
    let mut p = zero.clone();
    let mut dp = zero;
    for a in c.iter().rev() {
        dp = dp.mul(&q);
        dp.re += &p.re;
        dp.im += &p.im;
        p = p.mul(&q).add_real(a);
    }
    (p.to_f64(), dp.to_f64())
}

/// Newton steps on an exact univariate polynomial, evaluated without
/// rounding; recovers full double precision at simple roots of
/// ill-conditioned polynomials.
pub fn polish_exact(c: &[BigRational], z: Complex64, steps: usize) -> Complex64 {
    let mut z = z;
    for _ in 0..steps {
        let (pf, dpf) = exact_eval(c, z);
        if dpf.norm() == 0.0 || !dpf.norm().is_finite() {
            break;
        }
        let step = pf / dpf;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

/// `n |p(z)| / |p'(z)|` with exact evaluation: a disc about `z` that
/// contains a root.
fn exact_inclusion_radius(c: &[BigRational], z: Complex64) -> f64 {
    let n = c.len().saturating_sub(1) as f64;
    let (p, dp) = exact_eval(c, z);
    if p.norm() == 0.0 {
        0.0
    } else if dp.norm() == 0.0 {
        f64::INFINITY
    } else {
        n * p.norm() / dp.norm()
    }
}

/// Roots of a squarefree univariate polynomial (exact coefficients, low to
/// high), polished against the exact coefficients. Each root comes with the
/// radius of an inclusion disc; the discs are pairwise disjoint, so each
/// holds exactly one root. `None` when that cannot be certified.
pub fn exact_roots(c: &[BigRational]) -> Option<Vec<(Complex64, f64)>> {
    let mut n = c.len();
    while n > 0 && c[n - 1].is_zero() {
        n -= 1;
    }
    let c = &c[..n];
    let cf = complex_coeffs(c);
    let rough = aberth::roots(&cf).or_else(|| aberth::approximate_roots(&cf))?;
    let roots: Vec<(Complex64, f64)> = rough
        .into_iter()
        .map(|z| {
            let z = polish_exact(c, z, 4);
            (z, exact_inclusion_radius(c, z))
        })
        .collect();
    for (i, (a, ra)) in roots.iter().enumerate() {
        if !ra.is_finite() || !a.re.is_finite() || !a.im.is_finite() {
            return None;
        }
        for (b, rb) in &roots[i + 1..] {
            if (a - b).norm() <= ra + rb {
                return None;
            }
        }
    }
    Some(roots)
}

/// Best rational approximation with denominator at most `max_den`.
pub fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// `|x|_inf` of a complex vector.
pub fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, rat};

    #[test]
    fn float_poly_eval_matches_exact() {
        let p = parse_poly("3*x^2*y - 1/2*z^3 + 7", &["x", "y", "z"]).unwrap();
        let f = FloatPoly::new(&p);
        let v = f.eval(&[Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)]);
        // 3*(2i)*2 - 1/2*(-i) + 7 = 7 + 12.5 i
        assert!((v - Complex64::new(7.0, 12.5)).norm() < 1e-12);
    }

    #[test]
    fn exact_polish_of_sqrt2() {
        let c = [rat(-2), rat(0), rat(1)];
        let z = polish_exact(&c, Complex64::new(1.4, 0.0), 8);
        assert!((z.re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rationalize_simple() {
        assert_eq!(rationalize(0.75, 100), Some(BigRational::new(3.into(), 4.into())));
        assert_eq!(rationalize(-2.0, 100), Some(rat(-2)));
        assert_eq!(rationalize(1.0 / 3.0 + 1e-14, 1000), Some(BigRational::new(1.into(), 3.into())));
    }
}
