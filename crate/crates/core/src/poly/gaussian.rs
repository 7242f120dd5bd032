//! Exact arithmetic in the Gaussian rationals `Q(i)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use rug::Rational;

use crate::error::{Error, Result};

/// `re + i·im` with `re, im ∈ Q`. `rug::Rational` keeps both parts reduced
/// with positive denominators, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn i() -> Self {
        Self::new(Rational::new(), Rational::from(1))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(Rational::from(n), Rational::new())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(Rational::from((num, den)), Rational::new())
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(Rational::from(re), Rational::from(im))
    }

    /// Exact conversion of a finite `f64` (every finite double is rational).
    pub fn from_f64_exact(re: f64, im: f64) -> Option<Self> {
        Some(Self::new(Rational::from_f64(re)?, Rational::from_f64(im)?))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    pub fn is_one(&self) -> bool {
        self.im.cmp0().is_eq() && self.re == 1
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Rational::from(-&self.im))
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(
            Rational::from(&self.re / &n),
            -Rational::from(&self.im / &n),
        ))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Canonical text: `re/im` where each part is an integer or a
    /// parenthesised fraction, e.g. `(3/2)/-1`.
    pub fn to_canonical(&self) -> String {
        format!("{}/{}", canonical_rational(&self.re), canonical_rational(&self.im))
    }

    pub fn from_canonical(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("malformed canonical coefficient `{s}`"));
        let mut depth = 0usize;
        let mut split = None;
        for (k, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(bad());
                    }
                    split = Some(k);
                }
                _ => {}
            }
        }
        let k = split.ok_or_else(bad)?;
        let parse = |t: &str| -> Result<Rational> {
            let t = t.trim();
            let t = t
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(t);
            Rational::from_str(t).map_err(|_| bad())
        };
        Ok(Self::new(parse(&s[..k])?, parse(&s[k + 1..])?))
    }
}

fn canonical_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("({}/{})", q.numer(), q.denom())
    }
}

fn fmt_rational(q: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if *q.denom() == 1 {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Human form, re-parseable by the polynomial grammar: `3/2`, `-i`,
    /// `(1+2*i)`, `(-1/3*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re0 = self.re.cmp0().is_eq();
        let im0 = self.im.cmp0().is_eq();
        if im0 {
            return fmt_rational(&self.re, f);
        }
        let unit_im = *self.im.denom() == 1 && (*self.im.numer() == 1 || *self.im.numer() == -1);
        if re0 && unit_im {
            return f.write_str(if self.im.cmp0().is_lt() { "-i" } else { "i" });
        }
        f.write_str("(")?;
        if !re0 {
            fmt_rational(&self.re, f)?;
            f.write_str(if self.im.cmp0().is_lt() { "-" } else { "+" })?;
        } else if self.im.cmp0().is_lt() {
            f.write_str("-")?;
        }
        let abs_im = Rational::from(self.im.abs_ref());
        if abs_im != 1 {
            fmt_rational(&abs_im, f)?;
            f.write_str("*")?;
        }
        f.write_str("i)")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        Self::new(q, Rational::new())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            Rational::from(&self.re + &rhs.re),
            Rational::from(&self.im + &rhs.im),
        )
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            Rational::from(&self.re - &rhs.re),
            Rational::from(&self.im - &rhs.im),
        )
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.is_real() && rhs.is_real() {
            return GaussianRational::from(Rational::from(&self.re * &rhs.re));
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        GaussianRational::new(re, im)
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use [`GaussianRational::inv`] for a checked version.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        if self.is_real() && rhs.is_real() {
            return GaussianRational::from(Rational::from(&self.re / &rhs.re));
        }
        self * &rhs.inv().expect("division by zero in Q(i)")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_identities() {
        let a = GaussianRational::from_parts((3, 2), (-1, 3));
        let b = GaussianRational::from_parts((0, 1), (5, 7));
        let q = &a / &b;
        assert_eq!(&q * &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from(-1));
    }

    #[test]
    fn normalization_is_structural() {
        let a = GaussianRational::from_parts((2, 4), (-6, -3));
        let b = GaussianRational::from_parts((1, 2), (2, 1));
        assert_eq!(a, b);
        assert_eq!(a.re().denom().to_string(), "2");
    }

    #[test]
    fn canonical_round_trip() {
        for g in [
            GaussianRational::from_parts((3, 2), (0, 1)),
            GaussianRational::from_parts((-7, 1), (1, 9)),
            GaussianRational::i(),
        ] {
            let s = g.to_canonical();
            assert_eq!(GaussianRational::from_canonical(&s).unwrap(), g, "{s}");
        }
        assert_eq!(GaussianRational::from_parts((3, 2), (-1, 1)).to_canonical(), "(3/2)/-1");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(GaussianRational::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        assert_eq!(GaussianRational::from_parts((1, 1), (2, 1)).to_string(), "(1+2*i)");
        assert_eq!(GaussianRational::from_ratio(3, 2).to_string(), "3/2");
    }
}
