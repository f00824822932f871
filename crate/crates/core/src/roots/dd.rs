//! Double-double arithmetic, used to evaluate polynomials at root
//! approximations with roughly 106 bits of working precision.

use num_complex::Complex64;

/// Unit roundoff of the double-double format (conservative).
pub const DD_EPS: f64 = 4.0 * f64::EPSILON * f64::EPSILON;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn from_c64(z: Complex64) -> Self {
        CDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    #[inline]
    pub fn add_real(self, c: f64) -> CDd {
        CDd {
            re: self.re.add(Dd::from_f64(c)),
            im: self.im,
        }
    }

    #[inline]
    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }
}

/// Evaluates `P(z)` and `P'(z)` in double-double for ascending integer
/// coefficients.
pub fn eval_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let zz = CDd::from_c64(z);
    let n = coeffs.len() - 1;
    let mut p = CDd::from_c64(Complex64::new(coeffs[n], 0.0));
    let mut dp = CDd::default();
    for &c in coeffs[..n].iter().rev() {
        dp = dp.mul(zz).add(p);
        p = p.mul(zz).add_real(c);
    }
    (p.to_c64(), dp.to_c64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_low_order_bits() {
        let a = Dd::from_f64(1.0);
        let b = Dd::from_f64(1e-20);
        let s = a.add(b);
        assert_eq!(s.hi, 1.0);
        assert_eq!(s.lo, 1e-20);
        let back = s.sub(a);
        assert_eq!(back.to_f64(), 1e-20);
    }

    #[test]
    fn product_is_exact_for_doubles() {
        let x = 1.0 + f64::EPSILON;
        let p = Dd::from_f64(x).mul(Dd::from_f64(x));
        // (1+e)^2 = 1 + 2e + e^2; the e^2 term survives in lo.
        assert_eq!(p.hi, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(p.lo, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn cancellation_near_root() {
        // x^2 - 2 at the double nearest sqrt(2): the residual is tiny but
        // representable, and must not be flushed to zero.
        let r = std::f64::consts::SQRT_2;
        let (p, dp) = eval_with_derivative(&[-2.0, 0.0, 1.0], Complex64::new(r, 0.0));
        let exact = r.mul_add(r, -2.0);
        assert!((p.re - exact).abs() < 1e-30);
        assert!((dp.re - 2.0 * r).abs() < 1e-15);
    }
}
