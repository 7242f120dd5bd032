use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gaussian::GaussianRational;
use super::order::{ExponentVector, TermOrder};
use crate::error::{Error, Result};

/// Sparse polynomial in `z1..zd` over `Q(i)`.
///
/// Terms are kept in graded-lex order (the natural order of
/// [`ExponentVector`]); zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPolynomial {
    dim: usize,
    terms: BTreeMap<ExponentVector, GaussianRational>,
}

impl MultiPolynomial {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "polynomials need at least one variable");
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: GaussianRational) -> Self {
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zero(dim), c);
        }
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, GaussianRational::one())
    }

    /// The coordinate function `z_{var+1}` (variables are 0-based internally).
    pub fn var(dim: usize, var: usize) -> Self {
        assert!(var < dim, "variable index out of range");
        Self::monomial(ExponentVector::unit(dim, var, 1), GaussianRational::one())
    }

    pub fn monomial(exp: ExponentVector, c: GaussianRational) -> Self {
        let mut p = Self::zero(exp.dim());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// `z_var - w`.
    pub fn linear(dim: usize, var: usize, w: &GaussianRational) -> Self {
        &Self::var(dim, var) - &Self::constant(dim, w.clone())
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, GaussianRational)>,
    {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: e.len() });
            }
            p.add_term(ExponentVector::new(e), &c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&ExponentVector::zero(self.dim))
    }

    pub fn coeff(&self, e: &ExponentVector) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |e| e.total_degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.get(var)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.dim).map(|v| self.degree_in(v)).collect()
    }

    /// Variables that occur with positive exponent.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.dim).filter(|&v| self.degree_in(v) > 0).collect()
    }

    /// Leading term under graded-lex.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_term_in(&self, order: &TermOrder) -> Option<(&ExponentVector, &GaussianRational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Scaled so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, e: &ExponentVector, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(f, a)| (f.add(e), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }

    /// Conjugate reflection `z^m · conj(P(1/z̄))` with `m` the per-variable
    /// degrees of `P`. Agrees with `P` up to a unimodular factor on the torus.
    pub fn reflect(&self) -> Self {
        let degs = self.degrees();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let r: Vec<u32> = degs.iter().zip(e.as_slice()).map(|(m, a)| m - a).collect();
                (ExponentVector::new(r), c.conj())
            })
            .collect();
        Self { dim: self.dim, terms }
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_point_len(&self, n: usize) -> Result<()> {
        if n != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: n });
        }
        Ok(())
    }

    /// Exact value at a Gaussian-rational point.
    pub fn evaluate_exact(&self, w: &[GaussianRational]) -> Result<GaussianRational> {
        self.check_point_len(w.len())?;
        let powers = power_table(w, &self.degrees(), GaussianRational::one(), |a, b| a * b);
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in e.as_slice().iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[v][k as usize];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, w: &[Complex64]) -> Result<Complex64> {
        self.check_point_len(w.len())?;
        Ok(self.eval_unchecked(w))
    }

    pub(crate) fn eval_unchecked(&self, w: &[Complex64]) -> Complex64 {
        let powers = power_table(w, &self.degrees(), Complex64::new(1.0, 0.0), |a, b| a * b);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.as_slice()
                    .iter()
                    .enumerate()
                    .fold(c.to_complex64(), |t, (v, &k)| t * powers[v][k as usize])
            })
            .sum()
    }

    /// `∂^order P / ∂z_var^order`.
    pub fn derivative(&self, var: usize, order: u32) -> Result<Self> {
        if var >= self.dim {
            return Err(Error::VariableOutOfRange { index: var + 1, dim: self.dim });
        }
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e.get(var);
            if k < order {
                continue;
            }
            let falling: i64 = ((k - order + 1)..=k).map(i64::from).product();
            let mut f = e.clone();
            f.set(var, k - order);
            out.add_term(f, &(c * &GaussianRational::from(falling)));
        }
        Ok(out)
    }

    /// Exact substitution `z_var := value`; the result keeps the same `dim`.
    pub fn substitute(&self, var: usize, value: &GaussianRational) -> Self {
        let powers: Vec<GaussianRational> = {
            let mut p = vec![GaussianRational::one()];
            for k in 1..=self.degree_in(var) as usize {
                let next = &p[k - 1] * value;
                p.push(next);
            }
            p
        };
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e.get(var) as usize;
            let mut f = e.clone();
            f.set(var, 0);
            out.add_term(f, &(c * &powers[k]));
        }
        out
    }

    /// Coefficients `c_k` with `P = Σ c_k z_var^k`; each `c_k` is free of `z_var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let n = if self.is_zero() { 0 } else { self.degree_in(var) as usize + 1 };
        let mut out = vec![Self::zero(self.dim); n];
        for (e, c) in &self.terms {
            let k = e.get(var) as usize;
            let mut f = e.clone();
            f.set(var, 0);
            out[k].terms.insert(f, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(dim: usize, var: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(dim);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut f = e.clone();
                f.set(var, e.get(var) + k as u32);
                out.add_term(f, a);
            }
        }
        out
    }

    /// Projection onto the listed variables, which must include every used one.
    pub fn restrict_to(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(vars.len().max(1));
        for (e, c) in &self.terms {
            let f: Vec<u32> = if vars.is_empty() { vec![0] } else { vars.iter().map(|&v| e.get(v)).collect() };
            debug_assert_eq!(
                f.iter().sum::<u32>(),
                e.total_degree(),
                "restrict_to dropped a used variable"
            );
            out.add_term(ExponentVector::new(f), c);
        }
        out
    }

    /// Inverse of [`restrict_to`](Self::restrict_to): place variable `k` of
    /// `self` at position `vars[k]` of a `dim`-variate polynomial.
    pub fn embed(&self, dim: usize, vars: &[usize]) -> Self {
        let mut out = Self::zero(dim);
        for (e, c) in &self.terms {
            let mut f = vec![0; dim];
            for (k, &v) in vars.iter().enumerate() {
                f[v] = e.get(k);
            }
            out.add_term(ExponentVector::new(f), c);
        }
        out
    }

    /// Canonical serialization: one `re/im:e1,...,ed` string per term,
    /// leading (graded-lex largest) term first.
    pub fn to_canonical(&self) -> Vec<String> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let exps: Vec<String> = e.as_slice().iter().map(u32::to_string).collect();
                format!("{}:{}", c.to_canonical(), exps.join(","))
            })
            .collect()
    }

    pub fn from_canonical(dim: usize, terms: &[String]) -> Result<Self> {
        let mut out = Self::zero(dim);
        for t in terms {
            let (c, e) = t
                .rsplit_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("malformed canonical term `{t}`")))?;
            let exps = e
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidInput(format!("malformed exponent list `{e}`")))?;
            if exps.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: exps.len() });
            }
            out.add_term(ExponentVector::new(exps), &GaussianRational::from_canonical(c)?);
        }
        Ok(out)
    }

    /// Sum of absolute values of coefficients, as a float.
    pub fn coeff_norm1(&self) -> f64 {
        self.terms.values().map(|c| c.to_complex64().norm()).sum()
    }
}

fn power_table<T: Clone>(w: &[T], degs: &[u32], one: T, mul: impl Fn(&T, &T) -> T) -> Vec<Vec<T>> {
    w.iter()
        .zip(degs)
        .map(|(x, &m)| {
            let mut p = Vec::with_capacity(m as usize + 1);
            p.push(one.clone());
            for k in 1..=m as usize {
                let next = mul(&p[k - 1], x);
                p.push(next);
            }
            p
        })
        .collect()
}

/// Exact quotient `P / D`, or [`Error::NotDivisible`].
pub fn divide_exact(p: &MultiPolynomial, d: &MultiPolynomial) -> Result<MultiPolynomial> {
    if p.dim != d.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: d.dim });
    }
    let (lt_d, lc_d) = d.leading_term().ok_or(Error::DivisionByZero)?;
    let lc_inv = lc_d.inv()?;
    let mut rem = p.clone();
    let mut quo = MultiPolynomial::zero(p.dim);
    while let Some((lt_r, lc_r)) = rem.leading_term() {
        if !lt_d.divides(lt_r) {
            return Err(Error::NotDivisible);
        }
        let e = lt_r.quotient(lt_d);
        let c = lc_r * &lc_inv;
        rem = &rem - &d.mul_term(&e, &c);
        quo.add_term(e, &c);
    }
    Ok(quo)
}

impl<'a> Add<&'a MultiPolynomial> for &'a MultiPolynomial {
    type Output = MultiPolynomial;
    fn add(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPolynomial> for &'a MultiPolynomial {
    type Output = MultiPolynomial;
    fn sub(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPolynomial> for &'a MultiPolynomial {
    type Output = MultiPolynomial;
    fn mul(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = MultiPolynomial::zero(self.dim);
        for (e, a) in &self.terms {
            for (f, b) in &rhs.terms {
                out.add_term(e.add(f), &(a * b));
            }
        }
        out
    }
}

impl Neg for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn neg(self) -> MultiPolynomial {
        MultiPolynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPolynomial> for MultiPolynomial {
            type Output = MultiPolynomial;
            fn $m(self, rhs: MultiPolynomial) -> MultiPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MultiPolynomial {
    /// Human-readable and re-parseable, leading term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_real() && c.re().cmp0().is_lt() { (true, -c) } else { (false, c.clone()) };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(v, &a)| if a == 1 { format!("z{}", v + 1) } else { format!("z{}^{}", v + 1, a) })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
