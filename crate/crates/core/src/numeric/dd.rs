//! Double-double complex arithmetic for residuals that cancel badly in `f64`.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::exactpoly::{f64_to_ratio, ratio_to_f64};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_ratio(r: &BigRational) -> Dd {
        let hi = ratio_to_f64(r);
        let lo = ratio_to_f64(&(r - f64_to_ratio(hi)));
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (s, e) = quick_two_sum(s, e + self.lo + o.lo);
        Dd { hi: s, lo: e }
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let (s, e) = quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi);
        Dd { hi: s, lo: e }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn from_c64(z: Complex64) -> CDd {
        CDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn scale(self, r: Dd) -> CDd {
        CDd {
            re: self.re.mul(r),
            im: self.im.mul(r),
        }
    }
}

/// Value and derivative of `sum c_i z^i` by Horner's rule.
pub fn eval_with_derivative(c: &[CDd], z: CDd) -> (CDd, CDd) {
    let mut p = CDd::default();
    let mut dp = CDd::default();
    for &a in c.iter().rev() {
        dp = dp.mul(z).add(p);
        p = p.mul(z).add(a);
    }
    (p, dp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn thirds_round_trip() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let d = Dd::from_ratio(&third);
        let back = d.mul(Dd::from_f64(3.0));
        assert_eq!(back.hi, 1.0);
        assert!(back.lo.abs() < 1e-31);
    }

    #[test]
    fn cancellation_is_resolved() {
        // (1 + 2^-60) - 1 is lost in f64 but kept here
        let a = Dd::from_f64(1.0).add(Dd::from_f64(2f64.powi(-60)));
        let d = a.add(Dd::from_f64(-1.0));
        assert_eq!(d.to_f64(), 2f64.powi(-60));
    }

    #[test]
    fn complex_horner() {
        // z^2 + 1 at i
        let c = [CDd::from_c64(Complex64::new(1.0, 0.0)), CDd::default(), CDd::from_c64(Complex64::new(1.0, 0.0))];
        let (p, dp) = eval_with_derivative(&c, CDd::from_c64(Complex64::new(0.0, 1.0)));
        assert_eq!(p.to_c64(), Complex64::new(0.0, 0.0));
        assert_eq!(dp.to_c64(), Complex64::new(0.0, 2.0));
    }
}
