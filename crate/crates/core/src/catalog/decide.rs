use serde::{Deserialize, Serialize};

use super::space::{maximal_domain, DomainKind, MaximalDomainSpec, Membership, SpaceSpec};
use super::torus::{torus_zero_finiteness, TorusZeros};
use super::verdict::{
    make_witness, membership_from_positions, Certificate, CyclicityVerdict, PipelinePoint, PipelineTrace, Status,
};
use super::zeros::{polydisk_zero, ZeroTest};
use crate::error::{Error, Result};
use crate::ideal::{
    buchberger, circle_positions, codimension, factor_ideal, solve_variety, IdealCertificate, SolveOptions,
};
use crate::poly::{content_split, gcd_many, locate_roots, MultiPolynomial, TermOrder, UniPoly};

const FACTORWISE_NOTE: &str = "one-variable factors are cyclic when their zeros avoid the open disk; \
the remaining factor is cyclic iff it has finitely many zeros on the torus";

fn check_family(space: &SpaceSpec, family: &[MultiPolynomial]) -> Result<MaximalDomainSpec> {
    space.validate()?;
    if family.is_empty() {
        return Err(Error::Empty("family"));
    }
    for f in family {
        if f.dim() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: f.dim() });
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("family members must be nonzero".into()));
        }
    }
    maximal_domain(space)
}

/// Turn a zero test on the domain into a verdict for `p` alone.
fn from_zero_test(
    test: ZeroTest,
    domain: &MaximalDomainSpec,
    p: &MultiPolynomial,
    what: &str,
) -> Result<std::result::Result<String, CyclicityVerdict>> {
    match test {
        ZeroTest::Free => Ok(Ok(format!("no zero in the {what}"))),
        ZeroTest::Uncertain(reason) => Ok(Err(CyclicityVerdict::uncertain(reason))),
        ZeroTest::Zero(point, positions) => {
            let witness = make_witness(std::slice::from_ref(p), point, positions)?;
            Ok(Err(match witness {
                Some(w) if membership_from_positions(domain, &w.positions) == Membership::Inside => {
                    CyclicityVerdict::new(Status::NotCyclic, Certificate::Witness(w))
                }
                Some(w) => CyclicityVerdict::uncertain(format!("zero at {:?} sits on the boundary of the {what}", w.point)),
                None => CyclicityVerdict::uncertain(format!("a zero in the {what} was detected but failed the residual check")),
            }))
        }
    }
}

/// Cyclicity of a single polynomial.
pub fn is_cyclic(space: &SpaceSpec, p: &MultiPolynomial) -> Result<CyclicityVerdict> {
    let domain = check_family(space, std::slice::from_ref(p))?;
    let closed = domain.kind == DomainKind::ClosedPolydisk;
    let what = if closed { "closed polydisk" } else { "open polydisk" };
    let trace = |steps: Vec<String>| CyclicityVerdict::new(Status::Cyclic, Certificate::Trace { steps });
    match space {
        SpaceSpec::DirichletType { d, .. } if *d > 2 => {
            if p.is_constant() {
                return Ok(trace(vec!["nonzero constant".into()]));
            }
            Err(Error::Unsupported(format!("cyclicity in {} for nonconstant polynomials", space.label())))
        }
        SpaceSpec::DirichletType { t, d: 2 } if *t > 0.5 && *t <= 1.0 => {
            if let Err(v) = from_zero_test(polydisk_zero(p, false)?, &domain, p, what)? {
                return Ok(v);
            }
            let (_, rest) = content_split(p, 1);
            let (_, core) = content_split(&rest, 0);
            let torus = torus_zero_finiteness(&core)?;
            let certificate = Certificate::TorusAnalysis {
                factor: core.to_canonical(),
                torus: torus.clone(),
                interpretation: FACTORWISE_NOTE.into(),
            };
            let status = match torus {
                TorusZeros::Finite { .. } => Status::Cyclic,
                TorusZeros::Infinite { .. } => Status::NotCyclic,
                TorusZeros::Uncertain { .. } => Status::Uncertain,
            };
            Ok(CyclicityVerdict::new(status, certificate))
        }
        _ => Ok(match from_zero_test(polydisk_zero(p, closed)?, &domain, p, what)? {
            Ok(step) => trace(vec![step]),
            Err(v) => v,
        }),
    }
}

/// Joint cyclicity of a family through `I(F) = g · I_F`.
pub fn is_jointly_cyclic(space: &SpaceSpec, family: &[MultiPolynomial]) -> Result<CyclicityVerdict> {
    is_jointly_cyclic_with(space, family, &SolveOptions::default())
}

/// [`is_jointly_cyclic`] with explicit options for the variety solver.
pub fn is_jointly_cyclic_with(
    space: &SpaceSpec,
    family: &[MultiPolynomial],
    opts: &SolveOptions,
) -> Result<CyclicityVerdict> {
    let domain = check_family(space, family)?;
    let d = space.dim();
    let fac = factor_ideal(family)?;
    let mut trace = PipelineTrace {
        factorization: fac.record(),
        codimension: None,
        ideal: None,
        points: vec![],
        witness: None,
        gcd_verdict: None,
        steps: vec![format!("gcd has total degree {}", fac.g.total_degree())],
    };
    let finish = |status: Status, trace: PipelineTrace, hypothesis_met: bool| CyclicityVerdict {
        status,
        certificate: Certificate::Pipeline(Box::new(trace)),
        hypothesis_met,
    };

    if d == 1 {
        if !gcd_many(&fac.cofactors)?.is_one() {
            return Err(Error::InvalidInput("cofactors of a one-variable family must be coprime".into()));
        }
        trace.codimension = Some(0);
        trace.steps.push("one variable: common zeros are the zeros of the gcd".into());
        let mut uncertain = false;
        for r in locate_roots(&UniPoly::from_multi(&fac.g, 0)?) {
            match membership_from_positions(&domain, &[r.position]) {
                Membership::Inside => {
                    if let Some(w) = make_witness(family, vec![r.value], vec![r.position])? {
                        trace.witness = Some(w);
                        return Ok(finish(Status::NotJointlyCyclic, trace, true));
                    }
                    uncertain = true;
                }
                Membership::BoundaryUncertain => uncertain = true,
                Membership::Outside => {}
            }
        }
        let status = if uncertain { Status::Uncertain } else { Status::JointlyCyclic };
        return Ok(finish(status, trace, true));
    }

    // Common zeros of the cofactors.
    let gb = buchberger(&fac.cofactors, &TermOrder::grevlex(d))?;
    let basis = codimension(&gb);
    let Some(count) = basis.count() else {
        trace.ideal = Some(IdealCertificate::new(&gb, None));
        trace.steps.push("the cofactor ideal has infinite codimension".into());
        return Ok(finish(Status::Uncertain, trace, false));
    };
    trace.codimension = Some(count);
    trace.ideal = Some(IdealCertificate::new(&gb, None));
    let mut uncertain = None;
    if count > 0 {
        let sol = match solve_variety(&gb, opts) {
            Ok(s) => s,
            Err(Error::IllConditioned(m)) => {
                trace.steps.push(m);
                return Ok(finish(Status::Uncertain, trace, true));
            }
            Err(e) => return Err(e),
        };
        trace.ideal = Some(IdealCertificate::new(&gb, Some(&sol)));
        let positions = circle_positions(&gb, &sol)?;
        for (pt, pos) in sol.points.iter().zip(positions) {
            let membership = membership_from_positions(&domain, &pos);
            trace.points.push(PipelinePoint {
                coords: pt.coords.clone(),
                multiplicity: pt.multiplicity,
                positions: pos.clone(),
                membership,
            });
            match membership {
                Membership::Inside if trace.witness.is_none() => match make_witness(family, pt.coords.clone(), pos)? {
                    Some(w) => trace.witness = Some(w),
                    None => uncertain = Some("a common zero failed the residual check".to_string()),
                },
                Membership::BoundaryUncertain => {
                    uncertain = Some(format!("common zero {:?} is too close to the boundary", pt.coords));
                }
                _ => {}
            }
        }
    }
    if trace.witness.is_some() {
        return Ok(finish(Status::NotJointlyCyclic, trace, true));
    }
    if let Some(reason) = uncertain {
        trace.steps.push(reason);
        return Ok(finish(Status::Uncertain, trace, true));
    }
    trace.steps.push("no common zero of the cofactors in the maximal domain".into());
    if fac.g.is_constant() {
        return Ok(finish(Status::JointlyCyclic, trace, true));
    }

    let gv = is_cyclic(space, &fac.g)?;
    let status = match gv.status {
        Status::Cyclic => Status::JointlyCyclic,
        Status::NotCyclic => {
            // Zeros of g are common zeros of the whole family.
            if let Some(w) = gv.witness() {
                trace.witness = make_witness(family, w.point.clone(), w.positions.clone())?;
            }
            Status::NotJointlyCyclic
        }
        _ => Status::Uncertain,
    };
    trace.gcd_verdict = Some(gv);
    Ok(finish(status, trace, true))
}

/// The two routes to the verdict for `{g·q : q ∈ Q}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductConsistency {
    pub product_route: CyclicityVerdict,
    pub joint_route: CyclicityVerdict,
    pub gcd_route: CyclicityVerdict,
    /// Status combined from `Q` and `g` separately.
    pub factor_status: Status,
    /// `None` when either route is uncertain.
    pub agree: Option<bool>,
}

pub fn product_cyclicity_check(space: &SpaceSpec, q: &[MultiPolynomial], g: &MultiPolynomial) -> Result<ProductConsistency> {
    let products: Vec<MultiPolynomial> = q.iter().map(|x| g * x).collect();
    let product_route = is_jointly_cyclic(space, &products)?;
    let joint_route = is_jointly_cyclic(space, q)?;
    let gcd_route = is_cyclic(space, g)?;
    let factor_status = match (joint_route.status.affirmative(), gcd_route.status.affirmative()) {
        (Some(false), _) | (_, Some(false)) => Status::NotJointlyCyclic,
        (Some(true), Some(true)) => Status::JointlyCyclic,
        _ => Status::Uncertain,
    };
    let agree = match (product_route.status.affirmative(), factor_status.affirmative()) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(ProductConsistency { product_route, joint_route, gcd_route, factor_status, agree })
}
