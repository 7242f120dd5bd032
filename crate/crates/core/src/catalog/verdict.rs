use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::space::{maximal_domain, DomainKind, MaximalDomainSpec, Membership, SpaceSpec, BOUNDARY_MARGIN};
use super::torus::TorusZeros;
use crate::error::{Error, Result};
use crate::ideal::{IdealCertificate, IdealFactorizationRecord};
use crate::poly::{CirclePosition, MultiPolynomial};

/// Relative tolerance for witness residuals: `|f(w)| ≤ tol · max(1, ‖f‖₁)`.
pub const WITNESS_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Cyclic,
    NotCyclic,
    JointlyCyclic,
    NotJointlyCyclic,
    Uncertain,
}

impl Status {
    /// `Some(true)` for either cyclic status, `None` for [`Status::Uncertain`].
    pub fn affirmative(self) -> Option<bool> {
        match self {
            Self::Cyclic | Self::JointlyCyclic => Some(true),
            Self::NotCyclic | Self::NotJointlyCyclic => Some(false),
            Self::Uncertain => None,
        }
    }
}

/// A common zero of the family inside the maximal domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Vec<Complex64>,
    /// Position of each coordinate relative to the unit circle, exact where
    /// the point came from an exact root location.
    pub positions: Vec<CirclePosition>,
    /// `|f(w)|` for every family member, in input order.
    pub residuals: Vec<f64>,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelinePoint {
    pub coords: Vec<Complex64>,
    pub multiplicity: usize,
    pub positions: Vec<CirclePosition>,
    pub membership: Membership,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Witness(Witness),
    /// The family gcd is not cyclic and has no zero in `Ω_max` to show for it.
    GcdNotCyclic { g: Vec<String>, verdict: Box<CyclicityVerdict> },
    TorusAnalysis { factor: Vec<String>, torus: TorusZeros, interpretation: String },
    Pipeline(Box<PipelineTrace>),
    Trace { steps: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub factorization: IdealFactorizationRecord,
    /// `dim P_d / I_F`, absent when infinite.
    pub codimension: Option<usize>,
    /// Gröbner data for the cofactor ideal in two or more variables.
    pub ideal: Option<IdealCertificate>,
    pub points: Vec<PipelinePoint>,
    pub witness: Option<Witness>,
    pub gcd_verdict: Option<CyclicityVerdict>,
    pub steps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicityVerdict {
    pub status: Status,
    pub certificate: Certificate,
    /// Whether `V(I_F)` is finite (always true for a single polynomial).
    pub hypothesis_met: bool,
}

impl CyclicityVerdict {
    pub(crate) fn new(status: Status, certificate: Certificate) -> Self {
        Self { status, certificate, hypothesis_met: true }
    }

    pub(crate) fn uncertain(reason: impl Into<String>) -> Self {
        Self::new(Status::Uncertain, Certificate::Trace { steps: vec![reason.into()] })
    }

    /// The witness backing a negative verdict, searching nested certificates.
    pub fn witness(&self) -> Option<&Witness> {
        match &self.certificate {
            Certificate::Witness(w) => Some(w),
            Certificate::Pipeline(p) => {
                p.witness.as_ref().or_else(|| p.gcd_verdict.as_ref().and_then(|v| v.witness()))
            }
            Certificate::GcdNotCyclic { verdict, .. } => verdict.witness(),
            _ => None,
        }
    }
}

pub(crate) fn float_position(x: Complex64) -> CirclePosition {
    let r = x.norm();
    if r < 1.0 - BOUNDARY_MARGIN {
        CirclePosition::Inside
    } else if r > 1.0 + BOUNDARY_MARGIN {
        CirclePosition::Outside
    } else {
        CirclePosition::Uncertain
    }
}

/// Membership of a point from the per-coordinate circle positions.
pub fn membership_from_positions(domain: &MaximalDomainSpec, positions: &[CirclePosition]) -> Membership {
    use CirclePosition::*;
    match domain.kind {
        DomainKind::ClosedPolydisk => {
            if positions.contains(&Outside) {
                Membership::Outside
            } else if positions.iter().all(|p| matches!(p, Inside | OnCircle)) {
                Membership::Inside
            } else {
                Membership::BoundaryUncertain
            }
        }
        _ => {
            if positions.iter().any(|p| matches!(p, Outside | OnCircle)) {
                Membership::Outside
            } else if positions.iter().all(|p| *p == Inside) {
                Membership::Inside
            } else {
                Membership::BoundaryUncertain
            }
        }
    }
}

pub(crate) fn residuals(family: &[MultiPolynomial], point: &[Complex64]) -> Result<Vec<f64>> {
    family.iter().map(|f| f.evaluate(point).map(|v| v.norm())).collect()
}

fn residuals_ok(family: &[MultiPolynomial], res: &[f64], tol: f64) -> bool {
    family.iter().zip(res).all(|(f, r)| *r <= tol * f.coeff_norm1().max(1.0))
}

/// A witness for `family` at `point`, or `None` when the residuals are too large.
pub(crate) fn make_witness(
    family: &[MultiPolynomial],
    point: Vec<Complex64>,
    positions: Vec<CirclePosition>,
) -> Result<Option<Witness>> {
    let res = residuals(family, &point)?;
    if !residuals_ok(family, &res, WITNESS_TOLERANCE) {
        return Ok(None);
    }
    Ok(Some(Witness { point, positions, residuals: res, tolerance: WITNESS_TOLERANCE }))
}

/// Replay the witness check of a negative verdict without rerunning the
/// pipeline. Returns `Ok(true)` for verdicts without a witness.
pub fn verify_certificate(space: &SpaceSpec, family: &[MultiPolynomial], verdict: &CyclicityVerdict) -> Result<bool> {
    if let Certificate::Pipeline(p) = &verdict.certificate {
        if let Some(ideal) = &p.ideal {
            if !ideal.verify()? {
                return Ok(false);
            }
        }
    }
    let Some(w) = verdict.witness() else {
        return Ok(true);
    };
    let domain = maximal_domain(space)?;
    if w.point.len() != domain.d || w.positions.len() != domain.d {
        return Err(Error::DimensionMismatch { expected: domain.d, found: w.point.len() });
    }
    let res = residuals(family, &w.point)?;
    if !residuals_ok(family, &res, w.tolerance) {
        return Ok(false);
    }
    // Recorded positions must be consistent with the coordinates.
    let consistent = w.point.iter().zip(&w.positions).all(|(x, p)| match p {
        CirclePosition::Inside => x.norm() < 1.0,
        CirclePosition::OnCircle => (x.norm() - 1.0).abs() < 1e-6,
        CirclePosition::Outside => x.norm() > 1.0,
        CirclePosition::Uncertain => false,
    });
    Ok(consistent && membership_from_positions(&domain, &w.positions) == Membership::Inside)
}
