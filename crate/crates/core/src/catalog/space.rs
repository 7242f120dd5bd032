use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lab::WeightSpec;
use crate::poly::GaussianRational;

/// A function space on the unit polydisk `D^d` (the disk for weighted spaces).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpaceSpec {
    /// `H^p(D^d)`; `p = ∞` serializes as `"inf"`.
    Hardy {
        #[serde(with = "exponent")]
        p: f64,
        d: usize,
    },
    /// `D_t(D^d)`.
    DirichletType { t: f64, d: usize },
    /// `H_{v,n}` on the disk.
    WeightedHvn { weight: WeightSpec, n: u32 },
}

mod exponent {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if p.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(x),
            Raw::Text(t) if matches!(t.as_str(), "inf" | "infinity" | "∞") => Ok(f64::INFINITY),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {t:?}"))),
        }
    }
}

impl SpaceSpec {
    pub fn hardy(p: f64, d: usize) -> Self {
        Self::Hardy { p, d }
    }

    pub fn dirichlet(t: f64, d: usize) -> Self {
        Self::DirichletType { t, d }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Hardy { d, .. } | Self::DirichletType { d, .. } => *d,
            Self::WeightedHvn { .. } => 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Hardy { p, d } => {
                if !(*p > 0.0) || p.is_nan() {
                    return Err(Error::InvalidInput(format!("Hardy exponent must lie in (0, inf], got {p}")));
                }
                if *d == 0 {
                    return Err(Error::InvalidInput("dimension must be at least 1".into()));
                }
            }
            Self::DirichletType { t, d } => {
                if !t.is_finite() {
                    return Err(Error::InvalidInput(format!("Dirichlet parameter must be finite, got {t}")));
                }
                if *d == 0 {
                    return Err(Error::InvalidInput("dimension must be at least 1".into()));
                }
            }
            Self::WeightedHvn { weight, .. } => {
                weight.resolve()?;
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self {
            Self::Hardy { p, d } if p.is_infinite() => format!("H^inf(D^{d})"),
            Self::Hardy { p, d } => format!("H^{p}(D^{d})"),
            Self::DirichletType { t, d } => format!("D_{t}(D^{d})"),
            Self::WeightedHvn { n, .. } => format!("H_(v,{n})(D)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainKind {
    OpenPolydisk,
    ClosedPolydisk,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Inside,
    Outside,
    BoundaryUncertain,
}

/// Distance from the unit circle below which a float coordinate is not
/// classified.
pub const BOUNDARY_MARGIN: f64 = 1e-7;

/// The maximal domain `Ω_max` of a symbolic space. The envelope `Ω_env` is
/// reported equal to it; that equality is conjectural in general.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximalDomainSpec {
    pub kind: DomainKind,
    pub d: usize,
    pub envelope_equals_maximal: bool,
    pub envelope_note: String,
}

impl MaximalDomainSpec {
    fn closed(&self) -> bool {
        self.kind == DomainKind::ClosedPolydisk
    }

    /// Exact membership of a point with Gaussian-rational coordinates.
    pub fn contains_exact(&self, w: &[GaussianRational]) -> Result<Membership> {
        self.check_dim(w.len())?;
        let one = rug::Rational::from(1);
        let mut on_boundary = false;
        for x in w {
            let n = x.norm_sqr();
            if n > one {
                return Ok(Membership::Outside);
            }
            on_boundary |= n == one;
        }
        Ok(if on_boundary && !self.closed() { Membership::Outside } else { Membership::Inside })
    }

    /// Float membership with a [`BOUNDARY_MARGIN`] band around the circle.
    pub fn contains(&self, w: &[Complex64]) -> Result<Membership> {
        self.check_dim(w.len())?;
        let mut grazing = false;
        for x in w {
            let r = x.norm();
            if !r.is_finite() || r > 1.0 + BOUNDARY_MARGIN {
                return Ok(Membership::Outside);
            }
            grazing |= r >= 1.0 - BOUNDARY_MARGIN;
        }
        Ok(if grazing { Membership::BoundaryUncertain } else { Membership::Inside })
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: n });
        }
        if self.kind == DomainKind::Numeric {
            return Err(Error::NotSymbolic);
        }
        Ok(())
    }
}

pub fn maximal_domain(space: &SpaceSpec) -> Result<MaximalDomainSpec> {
    space.validate()?;
    let kind = match space {
        SpaceSpec::Hardy { .. } => DomainKind::OpenPolydisk,
        SpaceSpec::DirichletType { t, .. } if *t <= 1.0 => DomainKind::OpenPolydisk,
        SpaceSpec::DirichletType { .. } => DomainKind::ClosedPolydisk,
        SpaceSpec::WeightedHvn { .. } => return Err(Error::NotSymbolic),
    };
    Ok(MaximalDomainSpec {
        kind,
        d: space.dim(),
        envelope_equals_maximal: true,
        envelope_note: "envelope reported equal to the maximal domain; conjectural in general".into(),
    })
}

/// Summary of what the catalog knows about a space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogInfo {
    pub space: SpaceSpec,
    pub label: String,
    pub maximal_domain: Option<MaximalDomainSpec>,
    pub cyclicity_rule: String,
}

pub fn catalog_info(space: &SpaceSpec) -> Result<CatalogInfo> {
    space.validate()?;
    let maximal_domain = match maximal_domain(space) {
        Ok(m) => Some(m),
        Err(Error::NotSymbolic) => None,
        Err(e) => return Err(e),
    };
    let rule = match space {
        SpaceSpec::Hardy { .. } => "cyclic iff no zero in the open polydisk".to_string(),
        SpaceSpec::DirichletType { t, d: 1 } if *t <= 1.0 => "cyclic iff no zero in the open disk".into(),
        SpaceSpec::DirichletType { d: 1, .. } => "cyclic iff no zero in the closed disk".into(),
        SpaceSpec::DirichletType { t, d: 2 } if *t <= 0.5 => "cyclic iff no zero in the open bidisk".into(),
        SpaceSpec::DirichletType { t, d: 2 } if *t <= 1.0 => {
            "cyclic iff no zero in the open bidisk and, after removing one-variable factors, finitely many zeros on the torus"
                .into()
        }
        SpaceSpec::DirichletType { d: 2, .. } => "cyclic iff no zero in the closed bidisk".into(),
        SpaceSpec::DirichletType { .. } => "no symbolic classification for d > 2".into(),
        SpaceSpec::WeightedHvn { .. } => "numeric diagnostics only (scan-maxdomain)".into(),
    };
    Ok(CatalogInfo { space: space.clone(), label: space.label(), maximal_domain, cyclicity_rule: rule })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximal_domain_examples() {
        assert_eq!(maximal_domain(&SpaceSpec::hardy(2.0, 2)).unwrap().kind, DomainKind::OpenPolydisk);
        assert_eq!(maximal_domain(&SpaceSpec::dirichlet(2.0, 1)).unwrap().kind, DomainKind::ClosedPolydisk);
        assert_eq!(maximal_domain(&SpaceSpec::dirichlet(1.0, 2)).unwrap().kind, DomainKind::OpenPolydisk);
        let w = SpaceSpec::WeightedHvn { weight: WeightSpec::Constant { c: 1.0 }, n: 0 };
        assert_eq!(maximal_domain(&w), Err(Error::NotSymbolic));
    }

    #[test]
    fn membership() {
        let open = maximal_domain(&SpaceSpec::hardy(2.0, 2)).unwrap();
        let closed = maximal_domain(&SpaceSpec::dirichlet(3.0, 2)).unwrap();
        let one = GaussianRational::one();
        let half = GaussianRational::from_ratio(1, 2);
        let unit = GaussianRational::from_parts((3, 5), (4, 5));
        assert_eq!(open.contains_exact(&[half.clone(), unit.clone()]).unwrap(), Membership::Outside);
        assert_eq!(closed.contains_exact(&[half.clone(), unit]).unwrap(), Membership::Inside);
        assert_eq!(closed.contains_exact(&[half, one + GaussianRational::from_ratio(1, 9)]).unwrap(), Membership::Outside);
        let c = |x: f64| Complex64::new(x, 0.0);
        assert_eq!(open.contains(&[c(0.5), c(0.2)]).unwrap(), Membership::Inside);
        assert_eq!(open.contains(&[c(0.5), c(1.0)]).unwrap(), Membership::BoundaryUncertain);
        assert_eq!(open.contains(&[c(0.5), c(1.1)]).unwrap(), Membership::Outside);
        assert!(open.contains(&[c(0.5)]).is_err());
    }

    #[test]
    fn hardy_infinity_serialization() {
        let s = SpaceSpec::hardy(f64::INFINITY, 3);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"kind":"hardy","p":"inf","d":3}"#);
        assert_eq!(serde_json::from_str::<SpaceSpec>(&j).unwrap(), s);
        let s: SpaceSpec = serde_json::from_str(r#"{"kind":"dirichlet-type","t":0.75,"d":2}"#).unwrap();
        assert_eq!(s, SpaceSpec::dirichlet(0.75, 2));
        assert!(SpaceSpec::hardy(0.0, 1).validate().is_err());
    }
}
