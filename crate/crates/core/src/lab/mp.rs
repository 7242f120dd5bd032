//! Minimal complex arithmetic on top of `rug::Float`.

use std::ops::{AddAssign, SubAssign};

use num_complex::Complex64;
use rug::{float::Constant, Assign, Float};

/// Working precision in bits for `digits` significant decimal digits.
pub fn precision_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Mpc {
    pub re: Float,
    pub im: Float,
}

impl Mpc {
    pub fn zero(prec: u32) -> Self {
        Self { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn from_c64(prec: u32, z: Complex64) -> Self {
        Self { re: Float::with_val(prec, z.re), im: Float::with_val(prec, z.im) }
    }

    pub fn real(x: Float) -> Self {
        let prec = x.prec();
        Self { re: x, im: Float::new(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let mut out = Float::with_val(self.prec(), self.re.square_ref());
        out += &self.im * &self.im;
        out
    }

    pub fn mul(&self, b: &Mpc) -> Mpc {
        let p = self.prec();
        let mut re = Float::with_val(p, &self.re * &b.re);
        re -= &self.im * &b.im;
        let mut im = Float::with_val(p, &self.re * &b.im);
        im += &self.im * &b.re;
        Mpc { re, im }
    }

    pub fn scale(&self, x: &Float) -> Mpc {
        let p = self.prec();
        Mpc { re: Float::with_val(p, &self.re * x), im: Float::with_val(p, &self.im * x) }
    }

    /// `self += a·b`.
    pub fn add_mul(&mut self, a: &Mpc, b: &Mpc) {
        self.re += &a.re * &b.re;
        self.re -= &a.im * &b.im;
        self.im += &a.re * &b.im;
        self.im += &a.im * &b.re;
    }

    /// `self += a·conj(b)`.
    pub fn add_mul_conj(&mut self, a: &Mpc, b: &Mpc) {
        self.re += &a.re * &b.re;
        self.re += &a.im * &b.im;
        self.im += &a.im * &b.re;
        self.im -= &a.re * &b.im;
    }

    /// `self -= a·b`.
    pub fn sub_mul(&mut self, a: &Mpc, b: &Mpc) {
        self.re -= &a.re * &b.re;
        self.re += &a.im * &b.im;
        self.im -= &a.re * &b.im;
        self.im -= &a.im * &b.re;
    }

    /// `self += x·b` for real `x`.
    pub fn add_scaled(&mut self, x: &Float, b: &Mpc) {
        self.re += x * &b.re;
        self.im += x * &b.im;
    }

    /// `e^{iθ}` to full precision.
    pub fn cis(prec: u32, theta: &Float) -> Mpc {
        let (s, c) = theta.clone().sin_cos(Float::new(prec));
        Mpc { re: c, im: s }
    }

    /// Rescale a nonzero point onto the unit circle.
    pub fn normalize(&mut self) {
        let mut n = self.norm_sqr();
        n.sqrt_mut();
        self.re /= &n;
        self.im /= &n;
    }
}

impl AddAssign<&Mpc> for Mpc {
    fn add_assign(&mut self, rhs: &Mpc) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Mpc> for Mpc {
    fn sub_assign(&mut self, rhs: &Mpc) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub(crate) fn set_f64(x: &mut Float, v: f64) {
    x.assign(v);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_products() {
        let p = precision_bits(70);
        assert_eq!(p, 249);
        let a = Mpc::from_c64(p, Complex64::new(1.0, 2.0));
        let b = Mpc::from_c64(p, Complex64::new(-3.0, 0.5));
        assert_eq!(a.mul(&b).to_c64(), Complex64::new(1.0, 2.0) * Complex64::new(-3.0, 0.5));
        let mut acc = Mpc::zero(p);
        acc.add_mul_conj(&a, &b);
        assert_eq!(acc.to_c64(), Complex64::new(1.0, 2.0) * Complex64::new(-3.0, -0.5));
        let mut u = Mpc::from_c64(p, Complex64::new(0.6, 0.8000000000000002));
        u.normalize();
        let one = Float::with_val(p, u.norm_sqr() - 1u32);
        assert!(one.abs() < Float::with_val(p, 1e-70));
    }
}
