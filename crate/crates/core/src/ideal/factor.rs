use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{divide_exact, gcd_many, MultiPolynomial};

/// `I(F) = g · I_F`: the family gcd and the cofactors generating `I_F`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealFactorization {
    pub g: MultiPolynomial,
    pub cofactors: Vec<MultiPolynomial>,
}

/// Serialized form with polynomials in canonical term lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealFactorizationRecord {
    pub g: Vec<String>,
    pub cofactors: Vec<Vec<String>>,
}

impl IdealFactorization {
    pub fn record(&self) -> IdealFactorizationRecord {
        IdealFactorizationRecord {
            g: self.g.to_canonical(),
            cofactors: self.cofactors.iter().map(MultiPolynomial::to_canonical).collect(),
        }
    }
}

pub fn factor_ideal(family: &[MultiPolynomial]) -> Result<IdealFactorization> {
    let dim = family.first().ok_or(Error::Empty("family"))?.dim();
    if let Some(bad) = family.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
    }
    let g = gcd_many(family)?;
    let cofactors = family.iter().map(|f| divide_exact(f, &g)).collect::<Result<Vec<_>>>()?;
    Ok(IdealFactorization { g, cofactors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn ps(v: &[&str]) -> Vec<MultiPolynomial> {
        v.iter().map(|s| parse(s, 2).unwrap()).collect()
    }

    #[test]
    fn examples() {
        let f = factor_ideal(&ps(&["z1*z2", "z1"])).unwrap();
        assert_eq!(f.g, parse("z1", 2).unwrap());
        assert_eq!(f.cofactors, ps(&["z2", "1"]));

        let f = factor_ideal(&ps(&["(z1-z2)*(1-z1*z2)", "(z1-z2)*z1"])).unwrap();
        assert_eq!(f.g, parse("z1-z2", 2).unwrap());
        assert_eq!(f.cofactors, ps(&["1-z1*z2", "z1"]));
        assert!(gcd_many(&f.cofactors).unwrap().is_one());

        let f = factor_ideal(&ps(&["z1", "z2"])).unwrap();
        assert!(f.g.is_one());
        assert_eq!(f.cofactors, ps(&["z1", "z2"]));
    }

    #[test]
    fn all_zero_family_is_rejected() {
        assert!(factor_ideal(&[MultiPolynomial::zero(2)]).is_err());
        assert!(factor_ideal(&[]).is_err());
    }
}
