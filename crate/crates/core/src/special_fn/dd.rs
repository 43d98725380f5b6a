//! Minimal double-double arithmetic (unevaluated sum `hi + lo`, ~106 bits).
//!
//! Only what the series summation needs: add, multiply, divide, and a complex
//! wrapper. Error-free transforms follow Dekker/Knuth with `mul_add` for the
//! exact product.

use std::ops::{Add, AddAssign, Div, Mul};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let s = two_sum(self.hi, rhs.hi);
        let t = two_sum(self.lo, rhs.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, rhs: Dd) {
        *self = *self + rhs;
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let p = two_prod(self.hi, rhs.hi);
        let lo = p.lo + (self.hi * rhs.lo + self.lo * rhs.hi);
        quick_two_sum(p.hi, lo)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, rhs: f64) -> Dd {
        let p = two_prod(self.hi, rhs);
        quick_two_sum(p.hi, p.lo + self.lo * rhs)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        // one Newton correction on the f64 quotient
        let q1 = self.hi / rhs.hi;
        let r = self + rhs * -q1;
        let q2 = r.hi / rhs.hi;
        let r = r + rhs * -q2;
        let q3 = r.hi / rhs.hi;
        let q = quick_two_sum(q1, q2);
        q + Dd::from(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct ComplexDd {
    pub re: Dd,
    pub im: Dd,
}

impl ComplexDd {
    pub fn real(x: Dd) -> Self {
        ComplexDd { re: x, im: Dd::ZERO }
    }

    pub fn from_c64(z: Complex64) -> Self {
        ComplexDd {
            re: z.re.into(),
            im: z.im.into(),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Modulus of the leading parts; plenty for stopping decisions.
    pub fn norm_hi(&self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}

impl AddAssign for ComplexDd {
    fn add_assign(&mut self, rhs: ComplexDd) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Mul for ComplexDd {
    type Output = ComplexDd;
    fn mul(self, rhs: ComplexDd) -> ComplexDd {
        let neg_im = Dd {
            hi: -self.im.hi,
            lo: -self.im.lo,
        };
        ComplexDd {
            re: self.re * rhs.re + neg_im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Mul<Dd> for ComplexDd {
    type Output = ComplexDd;
    fn mul(self, rhs: Dd) -> ComplexDd {
        ComplexDd {
            re: self.re * rhs,
            im: self.im * rhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_keeps_low_word() {
        let third = Dd::ONE / Dd::from(3.0);
        let back = third * 3.0 + Dd::from(-1.0);
        assert!(back.to_f64().abs() < 1e-31, "{back:?}");
    }

    #[test]
    fn alternating_exponential_sum() {
        let mut term = Dd::ONE;
        let mut sum = Dd::ZERO;
        for i in 0..90 {
            sum += term;
            term = term * -10.0 / Dd::from((i + 1) as f64);
        }
        let want = (-10f64).exp();
        assert!(((sum.to_f64() - want) / want).abs() < 1e-15);
    }

    #[test]
    fn complex_product() {
        let a = ComplexDd::from_c64(Complex64::new(1.5, -2.0));
        let b = ComplexDd::from_c64(Complex64::new(-0.25, 4.0));
        let p = (a * b).to_c64();
        assert_eq!(p, Complex64::new(1.5, -2.0) * Complex64::new(-0.25, 4.0));
    }
}
