//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, GaussianRational, MultiPolynomial, TermOrder};

/// Terms sorted ascending under a fixed order, so the leading term is last.
#[derive(Clone, Debug)]
struct OrdPoly(Vec<(ExponentVector, GaussianRational)>);

impl OrdPoly {
    fn from_multi(p: &MultiPolynomial, order: &TermOrder) -> Self {
        let mut t: Vec<_> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        t.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Self(t)
    }

    fn to_multi(&self, dim: usize) -> MultiPolynomial {
        MultiPolynomial::from_terms(dim, self.0.iter().map(|(e, c)| (e.as_slice().to_vec(), c.clone())))
            .expect("dimension preserved")
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lt(&self) -> &ExponentVector {
        &self.0.last().expect("nonzero").0
    }

    fn monic(mut self) -> Self {
        if let Some((_, c)) = self.0.last() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero");
                for (_, a) in self.0.iter_mut() {
                    *a = &*a * &inv;
                }
            }
        }
        self
    }

    /// `self - c · x^shift · g`, with the caller guaranteeing that the top
    /// terms cancel; the top term is dropped without arithmetic.
    fn sub_cancel_top(&mut self, c: &GaussianRational, shift: &ExponentVector, g: &OrdPoly, order: &TermOrder) {
        let top = self.0.pop().expect("nonzero");
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let mut a = std::mem::take(&mut self.0).into_iter().peekable();
        let n = g.0.len() - 1;
        let mut b = g.0[..n].iter().map(|(e, gc)| (e.add(shift), gc * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().expect("peeked")),
                    Ordering::Greater => {
                        let (e, v) = b.next().expect("peeked");
                        out.push((e, -v));
                    }
                    Ordering::Equal => {
                        let (e, u) = a.next().expect("peeked");
                        let (_, v) = b.next().expect("peeked");
                        let s = &u - &v;
                        if !s.is_zero() {
                            out.push((e, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().expect("peeked")),
                (None, Some(_)) => {
                    let (e, v) = b.next().expect("peeked");
                    out.push((e, -v));
                }
                (None, None) => break,
            }
        }
        debug_assert!(out.last().is_none_or(|t| order.cmp(&t.0, &top.0) == Ordering::Less));
        self.0 = out;
    }
}

/// Full reduction of `f` modulo monic polynomials `basis`.
fn reduce(mut f: OrdPoly, basis: &[&OrdPoly], order: &TermOrder) -> OrdPoly {
    let mut rest: Vec<(ExponentVector, GaussianRational)> = Vec::new();
    while let Some((e, c)) = f.0.last() {
        match basis.iter().find(|g| g.lt().divides(e)) {
            Some(g) => {
                let shift = e.quotient(g.lt());
                let c = c.clone();
                f.sub_cancel_top(&c, &shift, g, order);
            }
            None => rest.push(f.0.pop().expect("nonempty")),
        }
    }
    rest.reverse();
    OrdPoly(rest)
}

fn s_poly(a: &OrdPoly, b: &OrdPoly, order: &TermOrder) -> OrdPoly {
    let l = a.lt().lcm(b.lt());
    let sa = l.quotient(a.lt());
    let sb = l.quotient(b.lt());
    let mut x = OrdPoly(a.0.iter().map(|(e, c)| (e.add(&sa), c.clone())).collect());
    let y = OrdPoly(b.0.iter().map(|(e, c)| (e.add(&sb), c.clone())).collect());
    x.sub_cancel_top(&GaussianRational::one(), &ExponentVector::zero(l.dim()), &y, order);
    x
}

/// A reduced Gröbner basis: monic generators sorted by ascending leading term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroebnerBasis {
    dim: usize,
    order: TermOrder,
    #[serde(with = "canonical_list")]
    generators: Vec<MultiPolynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn generators(&self) -> &[MultiPolynomial] {
        &self.generators
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.generators
            .iter()
            .map(|g| g.leading_term_in(&self.order).expect("nonzero generator").0.clone())
            .collect()
    }

    /// Wrap generators claimed to form a reduced basis; check with [`Self::verify`].
    pub(crate) fn from_parts(dim: usize, order: TermOrder, generators: Vec<MultiPolynomial>) -> Self {
        Self { dim, order, generators, reduced: true }
    }

    fn ord_generators(&self) -> Vec<OrdPoly> {
        self.generators.iter().map(|g| OrdPoly::from_multi(g, &self.order)).collect()
    }

    pub fn contains(&self, p: &MultiPolynomial) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }

    /// Re-check the defining property: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let gs = self.ord_generators();
        let refs: Vec<&OrdPoly> = gs.iter().collect();
        for i in 0..gs.len() {
            for j in (i + 1)..gs.len() {
                if !reduce(s_poly(&gs[i], &gs[j], &self.order), &refs, &self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

mod canonical_list {
    use super::MultiPolynomial;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[MultiPolynomial], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for p in v {
            seq.serialize_element(&p.to_canonical())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<MultiPolynomial>, D::Error> {
        let raw: Vec<Vec<String>> = Vec::deserialize(d)?;
        let dim = raw
            .iter()
            .flatten()
            .next()
            .and_then(|t| t.rsplit_once(':'))
            .map_or(1, |(_, e)| e.split(',').count());
        raw.iter()
            .map(|t| MultiPolynomial::from_canonical(dim, t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Remainder of `p` on division by `g`; zero iff `p` lies in the ideal.
pub fn normal_form(p: &MultiPolynomial, g: &GroebnerBasis) -> Result<MultiPolynomial> {
    if p.dim() != g.dim {
        return Err(Error::DimensionMismatch { expected: g.dim, found: p.dim() });
    }
    let gs = g.ord_generators();
    let refs: Vec<&OrdPoly> = gs.iter().collect();
    Ok(reduce(OrdPoly::from_multi(p, &g.order), &refs, &g.order).to_multi(g.dim))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger(generators: &[MultiPolynomial], order: &TermOrder) -> Result<GroebnerBasis> {
    let dim = generators.first().ok_or(Error::Empty("generator list"))?.dim();
    if let Some(bad) = generators.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
    }
    if order.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: order.dim() });
    }

    let mut polys: Vec<OrdPoly> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<OrdPoly> = generators
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| OrdPoly::from_multi(p, order).monic())
        .collect();
    inputs.sort_by(|a, b| order.cmp(a.lt(), b.lt()));
    for f in inputs {
        let refs: Vec<&OrdPoly> = basis.iter().map(|&k| &polys[k]).collect();
        let h = reduce(f, &refs, order).monic();
        if !h.is_zero() {
            polys.push(h);
            update(&polys, &mut basis, &mut pairs, polys.len() - 1);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .expect("nonempty");
        let Pair { i, j, .. } = pairs.swap_remove(best);
        let s = s_poly(&polys[i], &polys[j], order);
        let refs: Vec<&OrdPoly> = basis.iter().map(|&k| &polys[k]).collect();
        let h = reduce(s, &refs, order).monic();
        if !h.is_zero() {
            polys.push(h);
            update(&polys, &mut basis, &mut pairs, polys.len() - 1);
        }
    }

    // The update step keeps the basis minimal; interreduce for uniqueness.
    let mut minimal: Vec<OrdPoly> = basis.iter().map(|&k| polys[k].clone()).collect();
    minimal.sort_by(|a, b| order.cmp(a.lt(), b.lt()));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&OrdPoly> = minimal.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, p)| p).collect();
        let top = minimal[k].0.last().expect("nonzero").clone();
        let mut tail = minimal[k].clone();
        tail.0.pop();
        let mut r = reduce(tail, &others, order);
        r.0.push(top);
        reduced.push(r.to_multi(dim));
    }
    Ok(GroebnerBasis { dim, order: order.clone(), generators: reduced, reduced: true })
}

/// Gebauer–Möller update for a new basis element `h`.
fn update(polys: &[OrdPoly], basis: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lt_h = polys[h].lt();
    let mut candidates: Vec<Pair> = basis
        .iter()
        .map(|&g| Pair { i: g, j: h, lcm: lt_h.lcm(polys[g].lt()) })
        .collect();

    // Chain criterion among the new pairs: keep (h, g1) if its lcm is not a
    // proper multiple of another candidate's lcm, or if it is coprime.
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = candidates.pop() {
        let coprime = lt_h.is_coprime(polys[p.i].lt());
        let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(p);
        }
    }
    // Product criterion.
    kept.retain(|p| !lt_h.is_coprime(polys[p.i].lt()));

    pairs.retain(|p| {
        !(lt_h.divides(&p.lcm)
            && lt_h.lcm(polys[p.i].lt()) != p.lcm
            && lt_h.lcm(polys[p.j].lt()) != p.lcm)
    });
    pairs.extend(kept);

    basis.retain(|&g| !lt_h.divides(polys[g].lt()));
    basis.push(h);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, TermOrder};
    use proptest::prelude::*;

    fn ps(v: &[&str], d: usize) -> Vec<MultiPolynomial> {
        v.iter().map(|s| parse(s, d).unwrap()).collect()
    }

    #[test]
    fn maximal_ideal_is_its_own_basis() {
        let g = buchberger(&ps(&["z1-1", "z2-1"], 2), &TermOrder::lex(2)).unwrap();
        assert_eq!(g.generators(), &ps(&["z2-1", "z1-1"], 2)[..]);
        assert!(g.verify());
    }

    #[test]
    fn redundant_generator_disappears() {
        let g = buchberger(&ps(&["z1^2-z2^2", "z1-z2"], 2), &TermOrder::grlex(2)).unwrap();
        assert_eq!(g.generators(), &ps(&["z1-z2"], 2)[..]);
    }

    #[test]
    fn lex_basis_contains_pure_power() {
        let g = buchberger(&ps(&["z1^2", "z1*z2+z2^2"], 2), &TermOrder::lex(2)).unwrap();
        assert!(g.verify());
        assert!(g.leading_monomials().iter().any(|e| e.pure_power_var() == Some(1)));
        // Hand computation: {z1^2, z1 z2 + z2^2, z2^3}.
        assert_eq!(g.generators(), &ps(&["z2^3", "z1*z2 + z2^2", "z1^2"], 2)[..]);
    }

    #[test]
    fn normal_form_examples() {
        let lin = buchberger(&ps(&["z1-z2"], 2), &TermOrder::grlex(2)).unwrap();
        assert!(normal_form(&parse("z1^2-z2^2", 2).unwrap(), &lin).unwrap().is_zero());
        let m = buchberger(&ps(&["z1-1", "z2-1"], 2), &TermOrder::grlex(2)).unwrap();
        assert_eq!(normal_form(&MultiPolynomial::one(2), &m).unwrap(), MultiPolynomial::one(2));
        assert_eq!(normal_form(&parse("z1^2", 2).unwrap(), &m).unwrap(), MultiPolynomial::one(2));
    }

    #[test]
    fn degenerate_inputs() {
        let z = buchberger(&[MultiPolynomial::zero(2)], &TermOrder::grlex(2)).unwrap();
        assert!(z.is_zero_ideal());
        let u = buchberger(&ps(&["z1", "z1 + 3"], 2), &TermOrder::grlex(2)).unwrap();
        assert!(u.is_unit_ideal());
        assert!(buchberger(&[], &TermOrder::grlex(2)).is_err());
    }

    #[test]
    fn cyclic_three_roots() {
        let g = buchberger(
            &ps(&["z1+z2+z3", "z1*z2+z2*z3+z3*z1", "z1*z2*z3-1"], 3),
            &TermOrder::grevlex(3),
        )
        .unwrap();
        assert!(g.verify());
        for f in ps(&["z1+z2+z3", "z1*z2+z2*z3+z3*z1", "z1*z2*z3-1"], 3) {
            assert!(g.contains(&f).unwrap());
        }
    }

    #[test]
    fn serde_round_trip() {
        let g = buchberger(&ps(&["z1^2 - i*z2", "z2^2 - 1/3"], 2), &TermOrder::grlex(2)).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: GroebnerBasis = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn basis_is_certified_and_reduced(fam in prop::collection::vec(crate::poly::testing::arb_poly(2, 2), 1..4),
                                         kind in 0usize..3) {
            let order = [TermOrder::lex(2), TermOrder::grlex(2), TermOrder::grevlex(2)][kind].clone();
            let g = buchberger(&fam, &order).unwrap();
            prop_assert!(g.verify());
            for f in &fam {
                prop_assert!(g.contains(f).unwrap());
            }
            let lts = g.leading_monomials();
            for (k, p) in g.generators().iter().enumerate() {
                prop_assert!(p.leading_term_in(&order).unwrap().1.is_one());
                for (e, _) in p.terms() {
                    for (j, l) in lts.iter().enumerate() {
                        prop_assert!(j == k || !l.divides(e));
                    }
                }
            }
        }

        #[test]
        fn normal_form_is_idempotent_and_linear(fam in prop::collection::vec(crate::poly::testing::arb_poly(2, 2), 1..3),
                                                a in crate::poly::testing::arb_poly(2, 3),
                                                b in crate::poly::testing::arb_poly(2, 3)) {
            let g = buchberger(&fam, &TermOrder::grlex(2)).unwrap();
            let na = normal_form(&a, &g).unwrap();
            prop_assert_eq!(normal_form(&na, &g).unwrap(), na.clone());
            let nb = normal_form(&b, &g).unwrap();
            prop_assert_eq!(normal_form(&(&a + &b), &g).unwrap(), &na + &nb);
        }
    }
}
