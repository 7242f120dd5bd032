//! Multivariate gcd over `Q(i)`: content / primitive-part recursion on the
//! highest used variable, with a subresultant PRS at each level.

use super::polynomial::{divide_exact, MultiPolynomial};
use crate::error::{Error, Result};

/// Greatest common divisor, monic under graded-lex. `gcd(0, 0)` is an error.
pub fn gcd(p: &MultiPolynomial, q: &MultiPolynomial) -> Result<MultiPolynomial> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    if p.is_zero() && q.is_zero() {
        return Err(Error::Empty("gcd of two zero polynomials"));
    }
    Ok(gcd_rec(p, q).monic())
}

/// Fold [`gcd`] over a family, skipping zero members.
pub fn gcd_many(family: &[MultiPolynomial]) -> Result<MultiPolynomial> {
    let mut it = family.iter().filter(|f| !f.is_zero());
    let first = it.next().ok_or(Error::Empty("family has no nonzero member"))?;
    let mut g = first.monic();
    for f in it {
        if g.is_one() {
            break;
        }
        g = gcd(&g, f)?;
    }
    Ok(g)
}

fn main_var(p: &MultiPolynomial, q: &MultiPolynomial) -> Option<usize> {
    (0..p.dim()).rev().find(|&v| p.degree_in(v) > 0 || q.degree_in(v) > 0)
}

fn gcd_rec(p: &MultiPolynomial, q: &MultiPolynomial) -> MultiPolynomial {
    let dim = p.dim();
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    let Some(v) = main_var(p, q) else {
        return MultiPolynomial::one(dim);
    };
    if p.is_constant() || q.is_constant() {
        return MultiPolynomial::one(dim);
    }
    let (cp, pp) = content_split(p, v);
    let (cq, pq) = content_split(q, v);
    let c = gcd_rec(&cp, &cq);
    let g = primitive_gcd(&pp, &pq, v);
    (&c * &g).monic()
}

/// Content with respect to `var` (gcd of the coefficients, free of `var`)
/// and the primitive part.
pub fn content_split(p: &MultiPolynomial, var: usize) -> (MultiPolynomial, MultiPolynomial) {
    let coeffs = p.coefficients_in(var);
    let mut c = MultiPolynomial::zero(p.dim());
    for a in coeffs.iter().filter(|a| !a.is_zero()) {
        c = if c.is_zero() { a.monic() } else { gcd_rec(&c, a).monic() };
        if c.is_constant() {
            break;
        }
    }
    if c.is_zero() {
        return (MultiPolynomial::one(p.dim()), p.clone());
    }
    let pp = divide_exact(p, &c).expect("content divides every coefficient");
    (c, pp)
}

type Uni = Vec<MultiPolynomial>;

fn uni_deg(a: &Uni) -> usize {
    a.len() - 1
}

fn uni_trim(a: &mut Uni) {
    while a.len() > 1 && a.last().is_some_and(MultiPolynomial::is_zero) {
        a.pop();
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
fn prem(a: &Uni, b: &Uni) -> Uni {
    let mut r = a.clone();
    let db = uni_deg(b);
    let lb = &b[db];
    let mut steps = uni_deg(a) + 1 - db;
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = uni_deg(&r);
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (k, bk) in b.iter().enumerate() {
            let t = &lr * bk;
            r[dr - db + k] = &r[dr - db + k] - &t;
        }
        r.pop();
        if r.is_empty() {
            r.push(MultiPolynomial::zero(lb.dim()));
        }
        uni_trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        for x in r.iter_mut() {
            *x = &*x * &f;
        }
    }
    r
}

fn is_zero_uni(a: &Uni) -> bool {
    a.len() == 1 && a[0].is_zero()
}

/// Gcd of two polynomials primitive in `var`, via the subresultant PRS.
fn primitive_gcd(p: &MultiPolynomial, q: &MultiPolynomial, var: usize) -> MultiPolynomial {
    let dim = p.dim();
    let mut a: Uni = p.coefficients_in(var);
    let mut b: Uni = q.coefficients_in(var);
    if uni_deg(&a) < uni_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    if uni_deg(&b) == 0 {
        return MultiPolynomial::one(dim);
    }
    let mut g = MultiPolynomial::one(dim);
    let mut h = MultiPolynomial::one(dim);
    loop {
        let delta = uni_deg(&a) - uni_deg(&b);
        let r = prem(&a, &b);
        if is_zero_uni(&r) {
            break;
        }
        if uni_deg(&r) == 0 {
            return MultiPolynomial::one(dim);
        }
        let divisor = &g * &h.pow(delta as u32);
        let next: Uni = r
            .iter()
            .map(|x| divide_exact(x, &divisor).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = next;
        g = a[uni_deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta as u32);
            let den = h.pow(delta as u32 - 1);
            divide_exact(&num, &den).expect("subresultant h update is exact")
        };
    }
    let last = MultiPolynomial::from_coefficients_in(dim, var, &b);
    content_split(&last, var).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::poly::testing::arb_poly;
    use proptest::prelude::*;

    fn p(s: &str, d: usize) -> MultiPolynomial {
        parse(s, d).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("z1^2-z2^2", 2), &p("z1-z2", 2)).unwrap(), p("z1-z2", 2));
        assert_eq!(gcd(&p("z1", 3), &p("z2", 3)).unwrap(), MultiPolynomial::one(3));
        let a = p("(z1-1)^2*(z2+i)", 2);
        let b = p("(z1-1)*(z2+i)^2", 2);
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g, p("(z1-1)*(z2+i)", 2).monic());
        assert!(divide_exact(&a, &g).is_ok());
        assert!(divide_exact(&b, &g).is_ok());
    }

    #[test]
    fn gcd_with_zero_and_constants() {
        let a = p("2*z1*z2 + 4", 2);
        assert_eq!(gcd(&a, &MultiPolynomial::zero(2)).unwrap(), a.monic());
        assert_eq!(gcd(&a, &p("7", 2)).unwrap(), MultiPolynomial::one(2));
        assert!(gcd(&MultiPolynomial::zero(2), &MultiPolynomial::zero(2)).is_err());
    }

    #[test]
    fn gcd_univariate_deep_prs() {
        let a = p("(z1^3 - 2*z1 + i)*(z1^5 + 3*z1^2 - 1)", 1);
        let b = p("(z1^3 - 2*z1 + i)*(z1^4 - z1 + 7)", 1);
        assert_eq!(gcd(&a, &b).unwrap(), p("z1^3 - 2*z1 + i", 1));
    }

    #[test]
    fn gcd_three_variables() {
        let c = p("z1*z3 - z2 + 1", 3);
        let a = &c * &p("z1 + z2^2*z3", 3);
        let b = &c * &p("z3^2 - i*z1", 3);
        assert_eq!(gcd(&a, &b).unwrap(), c.monic());
    }

    #[test]
    fn gcd_many_folds() {
        let fam = [p("z1*z2", 2), p("z1", 2), MultiPolynomial::zero(2)];
        assert_eq!(gcd_many(&fam).unwrap(), p("z1", 2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn gcd_is_multiplicative_in_common_factor(a in arb_poly(2, 2), b in arb_poly(2, 2), c in arb_poly(2, 2)) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let lhs = gcd(&(&a * &c), &(&b * &c)).unwrap();
            let rhs = (&gcd(&a, &b).unwrap() * &c).monic();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(3, 2), b in arb_poly(3, 2)) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = gcd(&a, &b).unwrap();
            prop_assert!(divide_exact(&a, &g).is_ok());
            prop_assert!(divide_exact(&b, &g).is_ok());
        }
    }
}
