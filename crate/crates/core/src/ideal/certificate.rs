use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::groebner::GroebnerBasis;
use super::quotient::{codimension, QuotientBasis};
use super::variety::{residual, VarietySolution};
use crate::error::Result;
use crate::poly::{MultiPolynomial, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StandardMonomials {
    Finite(Vec<Vec<u32>>),
    Infinite { infinite: bool },
}

impl From<&QuotientBasis> for StandardMonomials {
    fn from(q: &QuotientBasis) -> Self {
        match q {
            QuotientBasis::Finite(b) => Self::Finite(b.clone()),
            QuotientBasis::Infinite => Self::Infinite { infinite: true },
        }
    }
}

/// A Gröbner basis with its standard monomials and solved variety, in a
/// form that can be rechecked without rerunning Buchberger.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealCertificate {
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
    pub order: TermOrder,
    pub standard_monomials: StandardMonomials,
    pub variety_points: Vec<Vec<Complex64>>,
    /// `max_g |g(w)|` over the basis, one per variety point.
    pub residuals: Vec<f64>,
    pub tolerance: f64,
}

impl IdealCertificate {
    pub fn new(g: &GroebnerBasis, solution: Option<&VarietySolution>) -> Self {
        let (variety_points, residuals, tolerance) = match solution {
            Some(s) => (
                s.points.iter().map(|p| p.coords.clone()).collect(),
                s.points.iter().map(|p| p.residual).collect(),
                s.tolerance,
            ),
            None => (vec![], vec![], 0.0),
        };
        Self {
            dim: g.dim(),
            basis: g.generators().iter().map(MultiPolynomial::to_canonical).collect(),
            order: g.order().clone(),
            standard_monomials: (&codimension(g)).into(),
            variety_points,
            residuals,
            tolerance,
        }
    }

    /// S-polynomial criterion on the basis, standard monomials recomputed
    /// from its leading terms, and point residuals within tolerance.
    pub fn verify(&self) -> Result<bool> {
        let generators = self
            .basis
            .iter()
            .map(|t| MultiPolynomial::from_canonical(self.dim, t))
            .collect::<Result<Vec<_>>>()?;
        let g = GroebnerBasis::from_parts(self.dim, self.order.clone(), generators);
        if !g.verify() || StandardMonomials::from(&codimension(&g)) != self.standard_monomials {
            return Ok(false);
        }
        if self.variety_points.len() != self.residuals.len() {
            return Ok(false);
        }
        Ok(self
            .variety_points
            .iter()
            .all(|w| w.len() == self.dim && residual(g.generators(), w) <= self.tolerance))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{buchberger, solve_variety, SolveOptions};
    use crate::poly::parse;

    #[test]
    fn certificate_round_trip_and_tamper() {
        let ps = vec![parse("z1^2 - 1", 2).unwrap(), parse("z2 - z1", 2).unwrap()];
        let g = buchberger(&ps, &TermOrder::grevlex(2)).unwrap();
        let s = solve_variety(&g, &SolveOptions::default()).unwrap();
        let c = IdealCertificate::new(&g, Some(&s));
        assert_eq!(c.standard_monomials, StandardMonomials::Finite(vec![vec![0, 0], vec![0, 1]]));
        let text = serde_json::to_string(&c).unwrap();
        let back: IdealCertificate = serde_json::from_str(&text).unwrap();
        assert!(back.verify().unwrap());

        let mut moved = back.clone();
        moved.variety_points[0][0] += Complex64::new(1e-3, 0.0);
        assert!(!moved.verify().unwrap());
        let mut shrunk = back;
        shrunk.standard_monomials = StandardMonomials::Finite(vec![vec![0, 0]]);
        assert!(!shrunk.verify().unwrap());
    }

    #[test]
    fn infinite_marker() {
        let g = buchberger(&[parse("z1", 3).unwrap(), parse("z2", 3).unwrap()], &TermOrder::grevlex(3)).unwrap();
        let c = IdealCertificate::new(&g, None);
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j["standard_monomials"], serde_json::json!({ "infinite": true }));
        assert!(c.verify().unwrap());
    }

    #[test]
    fn non_basis_is_rejected() {
        // {z1^2 - z2, z1*z2 - 1} is not a Gröbner basis under grevlex.
        let c = IdealCertificate {
            dim: 2,
            basis: vec![
                parse("z1^2 - z2", 2).unwrap().to_canonical(),
                parse("z1*z2 - 1", 2).unwrap().to_canonical(),
            ],
            order: TermOrder::grevlex(2),
            standard_monomials: StandardMonomials::Finite(vec![vec![0, 0], vec![0, 1], vec![1, 0]]),
            variety_points: vec![],
            residuals: vec![],
            tolerance: 1e-9,
        };
        assert!(!c.verify().unwrap());
    }
}
