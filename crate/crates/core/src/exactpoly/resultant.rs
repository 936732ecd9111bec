use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{PolyError, Polynomial};

/// Polynomial in one distinguished variable, coefficients low to high, each
/// coefficient free of that variable. Never has a zero leading entry.
type Dense = Vec<Polynomial>;

fn trim(mut a: Dense) -> Dense {
    while a.last().is_some_and(Polynomial::is_zero) {
        a.pop();
    }
    a
}

fn deg(a: &Dense) -> usize {
    a.len() - 1
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_remainder(a: &Dense, b: &Dense) -> Dense {
    let db = deg(b);
    let lcb = b.last().unwrap();
    let mut r = a.clone();
    let mut k = deg(a) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let shift = deg(&r) - db;
        let lr = r.last().unwrap().clone();
        let mut next: Dense = r.iter().map(|c| c * lcb).collect();
        for (j, bj) in b.iter().enumerate() {
            let t = bj * &lr;
            next[j + shift] = &next[j + shift] - &t;
        }
        next.pop();
        r = trim(next);
        k -= 1;
    }
    if k > 0 {
        let f = lcb.pow(k as u32);
        r = r.iter().map(|c| c * &f).collect();
    }
    r
}

fn div_all(a: &Dense, d: &Polynomial) -> Dense {
    a.iter()
        .map(|c| c.exact_div(d).expect("subresultant division is exact"))
        .collect()
}

/// Resultant with respect to `var` by the subresultant pseudo-remainder
/// sequence. The result lives over the same variable list with `var` absent.
pub fn resultant(f: &Polynomial, g: &Polynomial, var: &str) -> Result<Polynomial, PolyError> {
    let (f, g) = if f.vars() == g.vars() {
        (f.clone(), g.clone())
    } else {
        f.aligned(g)
    };
    let i = f
        .var_index(var)
        .ok_or_else(|| PolyError::VariableAbsent(var.to_string()))?;
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::Zero);
    }
    let (df, dg) = (f.degree_in(i), g.degree_in(i));
    if df == 0 && dg == 0 {
        return Err(PolyError::VariableAbsent(var.to_string()));
    }
    if df == 0 {
        return Ok(f.pow(dg));
    }
    if dg == 0 {
        return Ok(g.pow(df));
    }

    // Work with integer-coefficient multiples: Res(f,g) = sf^dg sg^df Res(F,G).
    let fp = f.primitive();
    let gp = g.primitive();
    let sf = f.leading_coefficient() / fp.leading_coefficient();
    let sg = g.leading_coefficient() / gp.leading_coefficient();
    let scale = num_traits::pow(sf, dg as usize) * num_traits::pow(sg, df as usize);

    Ok(resultant_rec(&fp, &gp, i).scale(&scale))
}

/// Resultant in variable `i` of two polynomials of positive degree in `i`.
///
/// With parameters present, the parameter of largest index is specialized
/// at integer points where both leading coefficients survive and the values
/// are interpolated; the degree bound is the smaller of the Sylvester-matrix
/// bound and the Bezout bound. Small cases go straight to the subresultant
/// sequence.
fn resultant_rec(f: &Polynomial, g: &Polynomial, i: usize) -> Polynomial {
    let mut params: Vec<usize> = f.occurring_vars();
    params.extend(g.occurring_vars());
    params.sort();
    params.dedup();
    params.retain(|&v| v != i);
    let (df, dg) = (f.degree_in(i), g.degree_in(i));
    let Some(&y) = params.last() else {
        return subresultant_prs(f.coefficients_in(i), g.coefficients_in(i), f.vars());
    };
    let sylvester = df * g.degree_in(y) + dg * f.degree_in(y);
    let bezout = f.total_degree().unwrap() * g.total_degree().unwrap();
    let bound = sylvester.min(bezout) as usize;
    if params.len() == 1 && bound <= 8 {
        return subresultant_prs(f.coefficients_in(i), g.coefficients_in(i), f.vars());
    }
    let lcf = f.coefficients_in(i).pop().unwrap();
    let lcg = g.coefficients_in(i).pop().unwrap();
    let mut points = Vec::with_capacity(bound + 1);
    let mut values = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while points.len() <= bound {
        // 0, 1, -1, 2, -2, ...
        let a = BigRational::from_integer(if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) }.into());
        k += 1;
        if specialize(&lcf, y, &a).is_zero() || specialize(&lcg, y, &a).is_zero() {
            continue;
        }
        let fa = specialize(f, y, &a);
        let ga = specialize(g, y, &a);
        values.push(resultant_rec(&fa, &ga, i));
        points.push(a);
    }
    interpolate(&points, &values, y, f.vars())
}

/// Set variable `y` to the constant `a`.
fn specialize(f: &Polynomial, y: usize, a: &BigRational) -> Polynomial {
    let maxe = f.degree_in(y) as usize;
    let mut pw = Vec::with_capacity(maxe + 1);
    let mut acc = BigRational::one();
    for _ in 0..=maxe {
        pw.push(acc.clone());
        acc *= a;
    }
    Polynomial::from_terms(
        f.vars(),
        f.terms().filter_map(|(m, c)| {
            let e = m.0[y] as usize;
            let v = c * &pw[e];
            if v.is_zero() {
                return None;
            }
            let mut m = m.0.clone();
            m[y] = 0;
            Some((m, v))
        }),
    )
}

/// Newton interpolation in variable `y` of polynomial values.
fn interpolate(points: &[BigRational], values: &[Polynomial], y: usize, vars: &[String]) -> Polynomial {
    let n = points.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for k in (j..n).rev() {
            let diff = &dd[k] - &dd[k - 1];
            dd[k] = diff.scale(&(&points[k] - &points[k - j]).recip());
        }
    }
    let yv = Polynomial::var(vars, y);
    let mut acc = dd[n - 1].clone();
    for k in (0..n - 1).rev() {
        let shift = &yv - &Polynomial::constant(vars, points[k].clone());
        acc = &(&acc * &shift) + &dd[k];
    }
    acc
}

fn subresultant_prs(a: Dense, b: Dense, vars: &[String]) -> Polynomial {
    let one = Polynomial::constant(vars, BigRational::one());
    let (mut a, mut b, mut negate) = if deg(&a) < deg(&b) {
        let odd = deg(&a) % 2 == 1 && deg(&b) % 2 == 1;
        (b, a, odd)
    } else {
        (a, b, false)
    };
    let mut g = one.clone();
    let mut h = one;
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            return Polynomial::zero(vars);
        }
        let divisor = &g * &h.pow(delta as u32);
        a = b;
        b = div_all(&r, &divisor);
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d as u32)
                .exact_div(&h.pow(d as u32 - 1))
                .expect("subresultant h update is exact"),
        };
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a) as u32;
    let lb = b.last().unwrap();
    let res = if da == 1 {
        lb.clone()
    } else {
        lb.pow(da)
            .exact_div(&h.pow(da - 1))
            .expect("final subresultant division is exact")
    };
    if negate {
        -res
    } else {
        res
    }
}

/// Discriminant in `var`: `(-1)^(n(n-1)/2) Res(f, df/dvar) / lc(f)`.
pub fn discriminant(f: &Polynomial, var: &str) -> Result<Polynomial, PolyError> {
    let i = f
        .var_index(var)
        .ok_or_else(|| PolyError::VariableAbsent(var.to_string()))?;
    if f.is_zero() {
        return Err(PolyError::Zero);
    }
    let n = f.degree_in(i);
    if n == 0 {
        return Err(PolyError::DegreeZero(var.to_string()));
    }
    let lc = f.coefficients_in(i).pop().unwrap();
    if n == 1 {
        return Ok(Polynomial::constant(f.vars(), BigRational::one()));
    }
    let r = resultant(f, &f.derivative(i), var)?;
    let d = r.exact_div(&lc).expect("leading coefficient divides Res(f, f')");
    let sign = (n as u64 * (n as u64 - 1) / 2) % 2 == 1;
    Ok(if sign { -d } else { d })
}

/// Resultant as the determinant of the Sylvester matrix, expanded by
/// fraction-free elimination. Slow; kept as an independent reference.
pub fn sylvester_resultant(
    f: &Polynomial,
    g: &Polynomial,
    var: &str,
) -> Result<Polynomial, PolyError> {
    let (f, g) = f.aligned(g);
    let i = f
        .var_index(var)
        .ok_or_else(|| PolyError::VariableAbsent(var.to_string()))?;
    let fc = f.coefficients_in(i);
    let gc = g.coefficients_in(i);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let size = m + n;
    let zero = Polynomial::zero(f.vars());
    if size == 0 {
        return Ok(Polynomial::constant(f.vars(), BigRational::one()));
    }
    let mut mat = vec![vec![zero.clone(); size]; size];
    for r in 0..n {
        for (k, c) in fc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in gc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat, f.vars()))
}

/// Fraction-free determinant of a square matrix of polynomials.
pub fn bareiss_determinant(mut a: Vec<Vec<Polynomial>>, vars: &[String]) -> Polynomial {
    let n = a.len();
    let mut sign = false;
    let mut prev = Polynomial::constant(vars, BigRational::one());
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Polynomial::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else if d.is_zero() {
        Polynomial::zero(vars)
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &["x", "t", "p", "q", "b", "c"]).unwrap()
    }

    #[test]
    fn substitution_example() {
        let r = resultant(&p("x^2 - t"), &p("x - 1"), "x").unwrap();
        assert!(r.same_up_to_scalar(&p("1 - t")));
        // exact sign convention: Res(f, x - a) = (-1)^deg f * f(a) ... for monic g
        assert_eq!(r, p("1 - t"));
    }

    #[test]
    fn common_factor_gives_zero() {
        let r = resultant(&p("x^2 + 1"), &p("x^2 + 1"), "x").unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn quadratic_discriminant() {
        let d = discriminant(&p("x^2 + b*x + c"), "x").unwrap();
        assert_eq!(d, p("b^2 - 4*c"));
    }

    #[test]
    fn depressed_cubic_discriminant() {
        let d = discriminant(&p("x^3 + p*x + q"), "x").unwrap();
        assert_eq!(d, p("-4*p^3 - 27*q^2"));
        let s = sylvester_resultant(&p("x^3 + p*x + q"), &p("3*x^2 + p"), "x").unwrap();
        assert!(s.same_up_to_scalar(&d));
    }

    #[test]
    fn collision_discriminant() {
        let d = discriminant(&p("(x - t)*(x - 2*t)"), "x").unwrap();
        assert!(d.same_up_to_scalar(&p("t^2")));
    }

    #[test]
    fn degree_zero_is_an_error() {
        assert!(matches!(
            discriminant(&p("t^2 + 1"), "x"),
            Err(PolyError::DegreeZero(_))
        ));
        assert!(matches!(
            resultant(&p("t"), &p("t + 1"), "x"),
            Err(PolyError::VariableAbsent(_))
        ));
    }

    #[test]
    fn matches_sylvester_on_fixed_cubics() {
        let f = p("2*x^3 - t*x^2 + 3*x - t^2 + 1");
        let g = p("x^3 + x^2*t - 5*x + 7*t");
        let a = resultant(&f, &g, "x").unwrap();
        let b = sylvester_resultant(&f, &g, "x").unwrap();
        assert_eq!(a, b);
        let g2 = p("x^2 - t*x + 4");
        assert_eq!(
            resultant(&f, &g2, "x").unwrap(),
            sylvester_resultant(&f, &g2, "x").unwrap()
        );
        assert_eq!(
            resultant(&g2, &f, "x").unwrap(),
            sylvester_resultant(&g2, &f, "x").unwrap()
        );
    }
}
