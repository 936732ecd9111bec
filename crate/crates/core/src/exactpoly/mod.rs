//! Exact multivariate polynomials over the rationals.
//!
//! Terms live in a sparse map from exponent vectors to `BigRational`
//! coefficients, ordered graded-lexicographically so that the last entry is
//! the leading term. Zero coefficients are never stored.

mod gcd;
mod parse;
mod resultant;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use gcd::{gcd, squarefree_decomposition, squarefree_part};
pub use parse::parse_poly;
pub use resultant::{discriminant, resultant, sylvester_resultant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("variable `{0}` does not occur in either polynomial")]
    VariableAbsent(String),
    #[error("polynomial has degree 0 in `{0}`")]
    DegreeZero(String),
    #[error("zero polynomial not allowed here")]
    Zero,
    #[error("variable `{0}` is not part of the polynomial ring")]
    NoSuchVariable(String),
}

/// Exponent vector with graded-lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Polynomial {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var<S: AsRef<str>>(vars: &[S], i: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.terms.insert(Monomial(e), BigRational::one());
        p
    }

    pub fn from_terms<S: AsRef<str>, I>(vars: &[S], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// `Some(n)` when every term has total degree `n`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let n = self.total_degree()?;
        self.terms.keys().all(|m| m.degree() == n).then_some(n)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Indices of variables that actually occur.
    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    /// Re-express over a larger (or reordered) variable list containing all
    /// variables that occur in `self`.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self, PolyError> {
        let names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        if names == self.vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, v) in self.vars.iter().enumerate() {
            match names.iter().position(|n| n == v) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.keys().any(|m| m.0[i] > 0) {
                        return Err(PolyError::NoSuchVariable(v.clone()));
                    }
                    map.push(None)
                }
            }
        }
        let mut out = Polynomial::zero(&names);
        for (m, c) in &self.terms {
            let mut e = vec![0; names.len()];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[*j] = m.0[i];
                }
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    fn aligned(&self, other: &Polynomial) -> (Polynomial, Polynomial) {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (
            self.with_vars(&vars).expect("superset"),
            other.with_vars(&vars).expect("superset"),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::constant(&self.vars, BigRational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.terms.insert(Monomial(e), c * rat(k as i64));
        }
        out
    }

    /// Coefficients with respect to variable `i`: `self = sum_k c_k * x_i^k`,
    /// each `c_k` free of `x_i` but over the same variable list.
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let n = self.degree_in(i) as usize;
        let mut out = vec![Polynomial::zero(&self.vars); n + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut e = m.0.clone();
            e[i] = 0;
            out[k].terms.insert(Monomial(e), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(vars: &[String], i: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.0.clone();
                e[i] += k as u32;
                out.add_term(Monomial(e), a.clone());
            }
        }
        out
    }

    /// Replace every variable simultaneously; `images[i]` is the image of the
    /// `i`-th variable. All images must share one variable list.
    pub fn substitute_all(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_default();
        let images: Vec<Polynomial> = images
            .iter()
            .map(|p| p.with_vars(&target).expect("image variable lists must agree"))
            .collect();
        // powers cache per variable
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::constant(&target, BigRational::one()), p.clone()])
            .collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = out + term;
        }
        out
    }

    /// Substitute variable `i` by `value`, keeping the variable list.
    pub fn substitute(&self, i: usize, value: &Polynomial) -> Polynomial {
        let value = value.with_vars(&self.vars).expect("same ring");
        let coeffs = self.coefficients_in(i);
        let mut acc = Polynomial::zero(&self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &value) + c;
        }
        acc
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars());
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.0) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(ratio_to_f64(c), 0.0);
            for (x, &k) in point.iter().zip(&m.0) {
                if k > 0 {
                    t *= x.powu(k);
                }
            }
            total += t;
        }
        total
    }

    /// Coefficient list (constant first) when at most variable `i` occurs.
    pub fn to_univariate(&self, i: usize) -> Option<Vec<BigRational>> {
        let n = self.degree_in(i) as usize;
        let mut out = vec![BigRational::zero(); n + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            out[m.0[i] as usize] = c.clone();
        }
        if self.is_zero() {
            out.clear();
        }
        Some(out)
    }

    pub fn from_univariate<S: AsRef<str>>(vars: &[S], i: usize, coeffs: &[BigRational]) -> Self {
        let mut p = Polynomial::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; p.nvars()];
            e[i] = k as u32;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        let (num, den) = if self.vars == d.vars {
            (self.clone(), d.clone())
        } else {
            self.aligned(d)
        };
        let (lm, lc) = den.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = num;
        let mut quot = Polynomial::zero(&rem.vars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = &c / &lc;
            for (dm, dc) in &den.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    /// Scalar multiple with integer coefficients of gcd 1 and positive leading
    /// coefficient. Zero stays zero.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        let mut scale = BigRational::new(den, g);
        if self.leading_coefficient().is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Monic normalization (leading coefficient one).
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coefficient();
        self.scale(&lc.recip())
    }

    pub fn same_up_to_scalar(&self, other: &Polynomial) -> bool {
        let (a, b) = self.aligned(other);
        a.primitive() == b.primitive()
    }

    /// Integer coefficients of `self.primitive()` paired with their monomials.
    pub fn integer_terms(&self) -> Vec<(Monomial, BigInt)> {
        self.primitive()
            .terms
            .into_iter()
            .map(|(m, c)| (m, c.to_integer()))
            .collect()
    }

    /// Dehomogenize by setting variable `i` to one (the variable stays in the
    /// ring but no longer occurs).
    pub fn set_var_one(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[i] = 0;
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Homogenize to total degree `deg` with respect to variable `i`,
    /// assumed absent from `self`.
    pub fn homogenize(&self, i: usize, deg: u32) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[i] += deg - m.degree();
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Largest monomial dividing every term, and the cofactor.
    pub fn split_monomial_content(&self) -> (Monomial, Polynomial) {
        if self.is_zero() {
            return (Monomial::one(self.nvars()), self.clone());
        }
        let mut min = self.terms.keys().next().unwrap().0.clone();
        for m in self.terms.keys() {
            for (a, b) in min.iter_mut().zip(&m.0) {
                *a = (*a).min(*b);
            }
        }
        let content = Monomial(min);
        let rest = Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.div(&content), c.clone()))
                .collect(),
        };
        (content, rest)
    }

    /// Maximum absolute coefficient as f64 (saturating).
    pub fn coefficient_norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| ratio_to_f64(c).abs())
            .fold(0.0, f64::max)
    }
}

/// Rational to f64 that survives numerators and denominators beyond f64 range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 900).max(0);
    let shift_d = (db - 900).max(0);
    let n = (r.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

/// Exact rational equal to a finite f64.
pub fn f64_to_ratio(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        if self.vars != rhs.vars {
            let (a, b) = self.aligned(rhs);
            return &a + &b;
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        if self.vars != rhs.vars {
            return &self + &rhs;
        }
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.vars != rhs.vars {
            let (a, b) = self.aligned(rhs);
            return &a * &b;
        }
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial {
            vars: self.vars.clone(),
            terms: acc,
        }
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form: terms in descending graded-lex order, `*` between
    /// factors and `^` for powers. Re-parses to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(fmt_rational(&abs));
            }
            for (v, &k) in self.vars.iter().zip(&m.0) {
                match k {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let a = p("x + y");
        let b = p("x - y");
        assert_eq!(&a * &b, p("x^2 - y^2"));
        assert_eq!(a.pow(3).num_terms(), 4);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = p("x^3 - y^3");
        let q = a.exact_div(&p("x - y")).unwrap();
        assert_eq!(q, p("x^2 + x*y + y^2"));
        assert!(a.exact_div(&p("x + 2*y")).is_none());
    }

    #[test]
    fn coefficients_round_trip() {
        let a = p("3*x^2*y + x*z^4 - 7");
        let cs = a.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(Polynomial::from_coefficients_in(a.vars(), 0, &cs), a);
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("x^3+y^3+z^3").homogeneous_degree(), Some(3));
        assert_eq!(p("x^2+y").homogeneous_degree(), None);
    }

    #[test]
    fn substitute_linear() {
        let f = p("x^2 + y*z");
        let vars = ["x", "y", "z"];
        let img = [p("x + y"), p("y"), p("z")];
        let g = f.substitute_all(&img);
        assert_eq!(g, p("x^2 + 2*x*y + y^2 + y*z"));
        let _ = vars;
    }

    #[test]
    fn primitive_normalization() {
        let f = p("-2/3*x + 4/9*y");
        assert_eq!(f.primitive(), p("3*x - 2*y"));
        assert!(f.same_up_to_scalar(&p("6*x - 4*y")));
    }

    #[test]
    fn f64_conversion_of_huge_ratio() {
        let big = BigRational::new(BigInt::from(10).pow(400u32), BigInt::from(10).pow(398u32));
        assert!((ratio_to_f64(&big) - 100.0).abs() < 1e-9);
    }
}
