use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::groebner::{normal_form, GroebnerBasis};
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, GaussianRational, MultiPolynomial, UniPoly};

/// Monomial basis of `P_d / I`, or the marker that it is infinite-dimensional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientBasis {
    Finite(Vec<Vec<u32>>),
    Infinite,
}

impl QuotientBasis {
    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn count(&self) -> Option<usize> {
        match self {
            Self::Finite(b) => Some(b.len()),
            Self::Infinite => None,
        }
    }

    pub fn monomials(&self) -> Result<Vec<ExponentVector>> {
        match self {
            Self::Finite(b) => Ok(b.iter().cloned().map(ExponentVector::new).collect()),
            Self::Infinite => Err(Error::InfiniteCodimension),
        }
    }
}

/// Standard monomials of a reduced basis, ascending in the basis order.
pub fn codimension(g: &GroebnerBasis) -> QuotientBasis {
    let dim = g.dim();
    let lts = g.leading_monomials();
    let mut caps = vec![None; dim];
    for e in &lts {
        if e.is_zero() {
            return QuotientBasis::Finite(vec![]);
        }
        if let Some(v) = e.pure_power_var() {
            let m = e.get(v);
            caps[v] = Some(caps[v].map_or(m, |c: u32| c.min(m)));
        }
    }
    let Some(caps) = caps.into_iter().collect::<Option<Vec<u32>>>() else {
        return QuotientBasis::Infinite;
    };
    let mut out = Vec::new();
    let mut cur = vec![0u32; dim];
    'outer: loop {
        let e = ExponentVector::new(cur.clone());
        if !lts.iter().any(|l| l.divides(&e)) {
            out.push(e);
        }
        for k in 0..dim {
            cur[k] += 1;
            if cur[k] < caps[k] {
                continue 'outer;
            }
            cur[k] = 0;
        }
        break;
    }
    out.sort_by(|a, b| g.order().cmp(a, b));
    QuotientBasis::Finite(out.into_iter().map(|e| e.as_slice().to_vec()).collect())
}

/// Coordinates of a normal form in the standard-monomial basis.
fn coordinates(
    nf: &MultiPolynomial,
    index: &BTreeMap<ExponentVector, usize>,
    n: usize,
) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); n];
    for (e, c) in nf.terms() {
        v[index[e]] = c.clone();
    }
    v
}

fn basis_index(basis: &[ExponentVector]) -> BTreeMap<ExponentVector, usize> {
    basis.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect()
}

/// Matrix of multiplication by `z_var` on `P_d / I`, column `k` holding the
/// coordinates of `z_var · s_k`. Returned row-major.
pub fn multiplication_matrix(
    g: &GroebnerBasis,
    basis: &[ExponentVector],
    var: usize,
) -> Result<Vec<Vec<GaussianRational>>> {
    let n = basis.len();
    let index = basis_index(basis);
    let mut m = vec![vec![GaussianRational::zero(); n]; n];
    let shift = ExponentVector::unit(g.dim(), var, 1);
    for (k, s) in basis.iter().enumerate() {
        let nf = normal_form(&MultiPolynomial::monomial(s.add(&shift), GaussianRational::one()), g)?;
        for (row, c) in coordinates(&nf, &index, n).into_iter().enumerate() {
            m[row][k] = c;
        }
    }
    Ok(m)
}

/// Monic generator of `I ∩ Q(i)[z_var]`: the minimal polynomial of the
/// multiplication operator by `z_var`. Its roots are exactly the
/// `var`-coordinates of the points of `V(I)`.
pub fn eliminant(g: &GroebnerBasis, basis: &[ExponentVector], var: usize) -> Result<UniPoly> {
    let n = basis.len();
    if n == 0 {
        return Ok(UniPoly::new(vec![GaussianRational::one()]));
    }
    let index = basis_index(basis);
    // Echelon rows: (pivot, vector, expression as a polynomial in z_var).
    let mut rows: Vec<(usize, Vec<GaussianRational>, Vec<GaussianRational>)> = Vec::new();
    let mut power = MultiPolynomial::one(g.dim());
    let z = MultiPolynomial::var(g.dim(), var);
    for k in 0..=n {
        let mut v = coordinates(&normal_form(&power, g)?, &index, n);
        let mut expr = vec![GaussianRational::zero(); k + 1];
        expr[k] = GaussianRational::one();
        for (piv, rv, re) in &rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone();
            for (x, y) in v.iter_mut().zip(rv) {
                *x -= &(&f * y);
            }
            for (x, y) in expr.iter_mut().zip(re) {
                *x -= &(&f * y);
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Ok(UniPoly::new(expr).monic()),
            Some(piv) => {
                let inv = v[piv].inv()?;
                let v: Vec<_> = v.iter().map(|x| x * &inv).collect();
                let expr: Vec<_> = expr.iter().map(|x| x * &inv).collect();
                rows.push((piv, v, expr));
            }
        }
        power = &power * &z;
    }
    unreachable!("n + 1 vectors in an n-dimensional space are dependent")
}
