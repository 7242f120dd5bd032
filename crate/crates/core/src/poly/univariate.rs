//! Dense univariate polynomials over `Q(i)` and the location of their roots
//! relative to the unit circle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::polynomial::MultiPolynomial;
use crate::error::{Error, Result};

/// Coefficients low to high, trailing zeros trimmed; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Read `p` as a polynomial in `var`; fails if another variable occurs.
    pub fn from_multi(p: &MultiPolynomial, var: usize) -> Result<Self> {
        if p.used_vars().iter().any(|&v| v != var) {
            return Err(Error::InvalidInput(format!("`{p}` is not univariate in z{}", var + 1)));
        }
        let mut c = vec![GaussianRational::zero(); p.degree_in(var) as usize + 1];
        for (e, a) in p.terms() {
            c[e.get(var) as usize] = a.clone();
        }
        Ok(Self::new(c))
    }

    pub fn to_multi(&self, dim: usize, var: usize) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero(dim);
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0; dim];
            e[var] = k as u32;
            out.add_term(e.into(), c);
        }
        out
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> GaussianRational {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero");
        Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from(k as i64))
                .collect(),
        )
    }

    /// `z^n · conj(f(1/z̄))`, `n = deg f`.
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().rev().map(GaussianRational::conj).collect())
    }

    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * z) + c)
    }

    pub fn eval_f64(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_complex64())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if r.len() <= dd {
            return Ok((Self::new(vec![]), self.clone()));
        }
        let inv = d.leading().inv()?;
        let mut q = vec![GaussianRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &(&c * dj);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> Self {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            for (k, b) in other.coeffs.iter().enumerate() {
                out[j + k] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GaussianRational::to_complex64).collect()
    }
}

/// Numerical roots of a polynomial with complex coefficients (low to high),
/// by Aberth–Ehrlich iteration followed by Newton polishing.
pub fn aberth_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    let deriv: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    let eval = |p: &[Complex64], z: Complex64| p.iter().rev().fold(Complex64::new(0.0, 0.0), |a, x| a * z + x);

    // Initial guesses on a circle whose radius is a geometric-mean estimate
    // of the root moduli, with an irrational angular offset.
    let r0 = monic[0].norm().powf(1.0 / n as f64).max(1e-3);
    let bound = 1.0 + monic[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let r0 = r0.min(bound);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();

    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let pz = eval(&monic, z[k]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / eval(&deriv, z[k]);
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let d = eval(&deriv, *zk);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval(&monic, *zk) / d;
            if !step.is_finite() {
                break;
            }
            *zk -= step;
        }
    }
    z
}

/// Where a root sits relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CirclePosition {
    Inside,
    OnCircle,
    Outside,
    Uncertain,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocatedRoot {
    pub value: Complex64,
    pub position: CirclePosition,
}

/// Below this distance from the circle a root with no exact reason to lie on
/// it is reported [`CirclePosition::Uncertain`].
const CIRCLE_MARGIN: f64 = 1e-10;

/// Distinct roots of `f`, each classified against the unit circle.
///
/// Roots of `gcd(s, s~)` (with `s` the squarefree part) are either unimodular
/// or come in pairs `w, 1/w̄`; an isolated one near the circle is therefore
/// exactly on it. The cofactor has no unimodular roots at all.
pub fn locate_roots(f: &UniPoly) -> Vec<LocatedRoot> {
    if f.degree() == 0 {
        return vec![];
    }
    let s = f.squarefree();
    let g = s.gcd(&s.reflect());
    let h = s.div_exact(&g).expect("gcd divides");
    let mut out = Vec::with_capacity(s.degree());
    out.extend(classify_self_reflective(&g));
    for r in polished_roots(&h) {
        let dist = r.value.norm() - 1.0;
        let position = if dist.abs() <= CIRCLE_MARGIN.max(10.0 * r.error) {
            CirclePosition::Uncertain
        } else if dist < 0.0 {
            CirclePosition::Inside
        } else {
            CirclePosition::Outside
        };
        out.push(LocatedRoot { value: r.value, position });
    }
    out.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    out
}

fn classify_self_reflective(g: &UniPoly) -> Vec<LocatedRoot> {
    let roots = polished_roots(g);
    roots
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let dist = r.value.norm() - 1.0;
            let margin = CIRCLE_MARGIN.max(10.0 * r.error);
            let position = if dist.abs() > margin {
                if dist < 0.0 {
                    CirclePosition::Inside
                } else {
                    CirclePosition::Outside
                }
            } else {
                let sep = roots
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, o)| (o.value - r.value).norm())
                    .fold(f64::INFINITY, f64::min);
                if sep > 4.0 * (dist.abs() + r.error) + 1e-12 {
                    CirclePosition::OnCircle
                } else {
                    CirclePosition::Uncertain
                }
            };
            LocatedRoot { value: r.value, position }
        })
        .collect()
}

struct RootEstimate {
    value: Complex64,
    error: f64,
}

/// Roots of a squarefree polynomial with a Newton-step error estimate.
fn polished_roots(f: &UniPoly) -> Vec<RootEstimate> {
    if f.degree() == 0 {
        return vec![];
    }
    let c = f.to_complex();
    let d = f.derivative().to_complex();
    let eval = |p: &[Complex64], z: Complex64| p.iter().rev().fold(Complex64::new(0.0, 0.0), |a, x| a * z + x);
    aberth_roots(&c)
        .into_iter()
        .map(|z| {
            let scale: f64 = c.iter().enumerate().map(|(k, x)| x.norm() * z.norm().powi(k as i32)).sum();
            let dz = eval(&d, z).norm();
            // Newton correction plus the rounding floor of evaluating f at z.
            let error = (eval(&c, z).norm() + 4.0 * f64::EPSILON * scale) / dz.max(f64::MIN_POSITIVE) * f.degree() as f64;
            RootEstimate { value: z, error: error.max(4.0 * f64::EPSILON * z.norm().max(1.0)) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn u(s: &str) -> UniPoly {
        UniPoly::from_multi(&parse(s, 1).unwrap(), 0).unwrap()
    }

    fn positions(s: &str) -> Vec<CirclePosition> {
        locate_roots(&u(s)).iter().map(|r| r.position).collect()
    }

    #[test]
    fn euclid_and_squarefree() {
        let f = u("(z-1)^3*(z+i)");
        assert_eq!(f.squarefree(), u("(z-1)*(z+i)"));
        assert_eq!(f.gcd(&u("(z-1)*(z-2)")), u("z-1"));
        let (q, r) = u("z^3 + 2").div_rem(&u("z - 1")).unwrap();
        assert_eq!(q, u("z^2 + z + 1"));
        assert_eq!(r, u("3"));
    }

    #[test]
    fn aberth_finds_roots_of_unity() {
        let mut c = vec![Complex64::new(0.0, 0.0); 9];
        c[0] = Complex64::new(-1.0, 0.0);
        c[8] = Complex64::new(1.0, 0.0);
        for z in aberth_roots(&c) {
            assert!((z.norm() - 1.0).abs() < 1e-13);
            assert!((z.powu(8) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn unimodular_roots_are_exactly_on_circle() {
        use CirclePosition::*;
        assert_eq!(positions("z - 1"), vec![OnCircle]);
        assert_eq!(positions("(z^2 + 1)*(z - 1/2)"), vec![OnCircle, OnCircle, Inside]);
        assert_eq!(positions("z^5 - 1"), vec![OnCircle; 5]);
        assert_eq!(positions("(3/5 + 4/5*i) - z"), vec![OnCircle]);
        assert_eq!(positions("(z - 2)*(2*z - 1)"), vec![Inside, Outside]);
        assert_eq!(positions("7"), vec![]);
    }

    #[test]
    fn near_circle_root_without_symmetry_is_uncertain() {
        let f = UniPoly::new(vec![
            -GaussianRational::from_ratio(1_000_000_000_001, 1_000_000_000_000),
            GaussianRational::one(),
        ]);
        assert_eq!(locate_roots(&f)[0].position, CirclePosition::Uncertain);
        let g = UniPoly::new(vec![-GaussianRational::from_ratio(1_000_001, 1_000_000), GaussianRational::one()]);
        assert_eq!(locate_roots(&g)[0].position, CirclePosition::Outside);
    }
}
