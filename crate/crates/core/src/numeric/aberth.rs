//! Simultaneous root finding for univariate complex polynomials.

use num_complex::Complex64;

/// Coefficients are stored low to high: `c[0] + c[1] z + ... + c[n] z^n`.
pub fn eval(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Value and derivative by Horner.
pub fn eval_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Radius of a disc around `z` that is guaranteed to contain a root:
/// `n |p(z)| / |p'(z)|`.
pub fn inclusion_radius(c: &[Complex64], z: Complex64) -> f64 {
    let n = c.len().saturating_sub(1) as f64;
    let (p, dp) = eval_with_derivative(c, z);
    if p.norm() == 0.0 {
        return 0.0;
    }
    if dp.norm() == 0.0 {
        return f64::INFINITY;
    }
    n * p.norm() / dp.norm()
}

fn trim(c: &[Complex64]) -> &[Complex64] {
    let mut n = c.len();
    while n > 0 && c[n - 1].norm() == 0.0 {
        n -= 1;
    }
    &c[..n]
}

/// Upper bound on root moduli (Fujiwara).
fn root_bound(c: &[Complex64]) -> f64 {
    let n = c.len() - 1;
    let lead = c[n].norm();
    (0..n)
        .map(|i| {
            let r = c[i].norm() / lead;
            let r = if i == 0 { r / 2.0 } else { r };
            r.powf(1.0 / (n - i) as f64)
        })
        .fold(0.0, f64::max)
        * 2.0
}

/// All roots of the polynomial with multiplicity, by Aberth–Ehrlich
/// iteration. Returns `None` when the iteration does not settle.
pub fn roots(c: &[Complex64]) -> Option<Vec<Complex64>> {
    roots_from(c, refine)
}

/// Like [`roots`], but returns the last iterate when the iteration has not
/// settled; the caller is responsible for validating the result.
pub fn approximate_roots(c: &[Complex64]) -> Option<Vec<Complex64>> {
    roots_from(c, |c, z| iterate(c, z, 2000))
}

fn roots_from(
    c: &[Complex64],
    run: impl Fn(&[Complex64], Vec<Complex64>) -> Option<Vec<Complex64>>,
) -> Option<Vec<Complex64>> {
    let c = trim(c);
    if c.len() <= 1 {
        return Some(vec![]);
    }
    let zeros = c.iter().take_while(|a| a.norm() == 0.0).count();
    let core = &c[zeros..];
    let n = core.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if n == 0 {
        return Some(out);
    }
    if n == 1 {
        out.push(-core[0] / core[1]);
        return Some(out);
    }
    let r = root_bound(core).max(f64::MIN_POSITIVE);
    let init: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r * 0.5, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    out.extend(run(core, init)?);
    Some(out)
}

/// Aberth iteration from the given starting points (one per root).
pub fn refine(c: &[Complex64], z: Vec<Complex64>) -> Option<Vec<Complex64>> {
    refine_with(c, z, 2000)
}

/// [`refine`] with a cap on the number of sweeps.
pub fn refine_with(c: &[Complex64], z: Vec<Complex64>, sweeps: usize) -> Option<Vec<Complex64>> {
    let (z, converged) = sweep(c, z, sweeps)?;
    if converged {
        return Some(z);
    }
    // accept if every root has a small residual step anyway
    let ok = z.iter().all(|&zi| {
        let (p, dp) = eval_with_derivative(c, zi);
        (p / dp).norm() <= 1e-9 * zi.norm().max(1.0)
    });
    ok.then_some(z)
}

/// At most `sweeps` Aberth sweeps; returns the last iterate whether or not
/// it converged. Callers validate the result themselves.
pub fn iterate(c: &[Complex64], z: Vec<Complex64>, sweeps: usize) -> Option<Vec<Complex64>> {
    sweep(c, z, sweeps).map(|(z, _)| z)
}

fn sweep(c: &[Complex64], mut z: Vec<Complex64>, sweeps: usize) -> Option<(Vec<Complex64>, bool)> {
    let n = z.len();
    debug_assert_eq!(n + 1, c.len());
    let mut done = vec![false; n];
    for _ in 0..sweeps {
        let mut moved = false;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(c, z[i]);
            if p.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[i] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            return Some((z, true));
        }
    }
    Some((z, false))
}

/// Newton polishing of a single simple root.
pub fn polish(c: &[Complex64], mut z: Complex64, steps: usize) -> Complex64 {
    for _ in 0..steps {
        let (p, dp) = eval_with_derivative(c, z);
        if dp.norm() == 0.0 {
            break;
        }
        let dz = p / dp;
        z -= dz;
        if dz.norm() <= f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}
