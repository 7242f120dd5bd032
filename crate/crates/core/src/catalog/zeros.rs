//! Exact decision of whether a polynomial vanishes somewhere in the open or
//! closed polydisk.
//!
//! In two variables write `P = c(z1)·Q` with `Q` primitive in `z2`. Then `P`
//! has no zero in `D²` iff `c` and `Q(·, 0)` have no zero in `D` and, for every
//! `ζ ∈ T`, `Q(ζ, ·)` has no zero in `D` (the largest `-log|y|` over the roots
//! of `Q(x, ·)` is subharmonic in `x`). The number of roots of `Q(ζ, ·)` in `D`
//! only changes where a root crosses the circle or roots collide, so testing
//! one exact point per arc between those events is a complete check.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arcs::{arc_test_points, leading_in_y, unimodular_angles, x_events};
use super::torus::{torus_zero_finiteness, TorusZeros};
use super::verdict::float_position;
use crate::error::{Error, Result};
use crate::poly::{
    aberth_roots, content_split, divide_exact, gcd, locate_roots, CirclePosition, GaussianRational, LocatedRoot,
    MultiPolynomial, UniPoly,
};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum ZeroTest {
    Free,
    /// A zero and the position of each coordinate against the circle.
    Zero(Vec<Complex64>, Vec<CirclePosition>),
    Uncertain(String),
}

fn hits(position: CirclePosition, closed: bool) -> bool {
    position == CirclePosition::Inside || (closed && position == CirclePosition::OnCircle)
}

/// First root of `u` in the (open or closed) disk, or an uncertainty.
fn disk_root(u: &UniPoly, closed: bool) -> std::result::Result<Option<LocatedRoot>, String> {
    let roots: Vec<LocatedRoot> = locate_roots(u);
    if let Some(r) = roots.iter().find(|r| hits(r.position, closed)) {
        return Ok(Some(*r));
    }
    if let Some(r) = roots.iter().find(|r| r.position == CirclePosition::Uncertain) {
        return Err(format!("root {} is too close to the circle to classify", r.value));
    }
    Ok(None)
}

/// Zero test on `D^d` (open) or its closure.
pub(crate) fn polydisk_zero(p: &MultiPolynomial, closed: bool) -> Result<ZeroTest> {
    if p.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial vanishes everywhere".into()));
    }
    let dim = p.dim();
    let used = p.used_vars();
    let embed = |vals: &[Complex64], pos: &[CirclePosition]| {
        let mut w = vec![Complex64::new(0.0, 0.0); dim];
        let mut p = vec![CirclePosition::Inside; dim];
        for ((v, x), q) in used.iter().zip(vals).zip(pos) {
            w[*v] = *x;
            p[*v] = *q;
        }
        ZeroTest::Zero(w, p)
    };
    match used.len() {
        0 => Ok(ZeroTest::Free),
        1 => {
            let u = UniPoly::from_multi(p, used[0])?;
            Ok(match disk_root(&u, closed) {
                Ok(Some(r)) => embed(&[r.value], &[r.position]),
                Ok(None) => ZeroTest::Free,
                Err(m) => ZeroTest::Uncertain(m),
            })
        }
        2 => Ok(match bidisk(&p.restrict_to(&used), closed)? {
            ZeroTest::Zero(w, p) => embed(&w, &p),
            other => other,
        }),
        _ => many_variables(p, closed),
    }
}

fn bidisk(p: &MultiPolynomial, closed: bool) -> Result<ZeroTest> {
    let (c, q) = content_split(p, 1);
    match disk_root(&UniPoly::from_multi(&c, 0)?, closed) {
        Ok(Some(r)) => return Ok(at_origin_slice(r)),
        Ok(None) => {}
        Err(m) => return Ok(ZeroTest::Uncertain(m)),
    }
    let q0 = q.substitute(1, &GaussianRational::zero());
    if q0.is_zero() {
        return Ok(ZeroTest::Zero(vec![Complex64::new(0.0, 0.0); 2], vec![CirclePosition::Inside; 2]));
    }
    match disk_root(&UniPoly::from_multi(&q0, 0)?, closed) {
        Ok(Some(r)) => return Ok(at_origin_slice(r)),
        Ok(None) => {}
        Err(m) => return Ok(ZeroTest::Uncertain(m)),
    }

    let q_sf = divide_exact(&q, &gcd(&q, &q.derivative(1, 1)?)?)?;
    let g = gcd(&q_sf, &q_sf.reflect())?;
    let r = divide_exact(&q_sf, &g)?;
    let mut events = unimodular_angles(&leading_in_y(&q_sf)?);
    events.extend(x_events(&[q_sf.clone(), q_sf.derivative(1, 1)?])?);
    if !r.is_constant() {
        events.extend(x_events(&[r.clone(), r.reflect()])?);
    }
    let zetas = match arc_test_points(events) {
        Ok(z) => z,
        Err(Error::IllConditioned(m)) => return Ok(ZeroTest::Uncertain(m)),
        Err(e) => return Err(e),
    };
    for zeta in &zetas {
        let slice = UniPoly::from_multi(&q_sf.substitute(0, zeta), 1)?;
        match disk_root(&slice, false) {
            Ok(Some(_)) => {
                return Ok(match interior_witness(&q, zeta.to_complex64()) {
                    Some(w) => {
                        let pos = w.iter().map(|x| float_position(*x)).collect();
                        ZeroTest::Zero(w, pos)
                    }
                    None => ZeroTest::Uncertain(format!("zeros approach z1 = {zeta} but no interior point was pinned down")),
                });
            }
            Ok(None) => {}
            Err(m) => return Ok(ZeroTest::Uncertain(m)),
        }
    }
    if !closed {
        return Ok(ZeroTest::Free);
    }

    // Open bidisk is clear; the closed one fails exactly at torus zeros.
    Ok(match torus_zero_finiteness(&q)? {
        TorusZeros::Finite { points } if points.is_empty() => ZeroTest::Free,
        TorusZeros::Finite { points } => ZeroTest::Zero(points[0].to_vec(), vec![CirclePosition::OnCircle; 2]),
        TorusZeros::Infinite { .. } => match torus_curve_point(&q, &zetas)? {
            Some(w) => ZeroTest::Zero(w, vec![CirclePosition::OnCircle; 2]),
            None => ZeroTest::Uncertain("torus curve found but no point on it was located".into()),
        },
        TorusZeros::Uncertain { reason } => ZeroTest::Uncertain(reason),
    })
}

fn at_origin_slice(r: LocatedRoot) -> ZeroTest {
    ZeroTest::Zero(vec![r.value, Complex64::new(0.0, 0.0)], vec![r.position, CirclePosition::Inside])
}

/// A zero of `q` in the open bidisk near `z1 = ζ ∈ T`, where `q(ζ, ·)` has a
/// root in `D`.
fn interior_witness(q: &MultiPolynomial, zeta: Complex64) -> Option<Vec<Complex64>> {
    let coeffs = q.coefficients_in(1);
    let scale = q.coeff_norm1().max(1.0);
    for delta in [1e-2, 1e-4, 1e-6] {
        let x = zeta * (1.0 - delta);
        let c: Vec<Complex64> = coeffs.iter().map(|a| a.evaluate(&[x, Complex64::new(0.0, 0.0)]).unwrap_or_default()).collect();
        let found = aberth_roots(&c)
            .into_iter()
            .filter(|y| y.norm() < 1.0 - 1e-6)
            .find(|y| q.evaluate(&[x, *y]).is_ok_and(|v| v.norm() <= 1e-9 * scale));
        if let Some(y) = found {
            return Some(vec![x, y]);
        }
    }
    None
}

fn torus_curve_point(q: &MultiPolynomial, zetas: &[GaussianRational]) -> Result<Option<Vec<Complex64>>> {
    for zeta in zetas {
        let slice = UniPoly::from_multi(&q.substitute(0, zeta), 1)?;
        if let Some(r) = locate_roots(&slice).into_iter().find(|r| r.position == CirclePosition::OnCircle) {
            return Ok(Some(vec![zeta.to_complex64(), r.value]));
        }
    }
    Ok(None)
}

/// `d > 2`: a dominant constant term proves zero-freeness on the closed
/// polydisk; otherwise look for zeros on seeded random two-variable slices.
fn many_variables(p: &MultiPolynomial, closed: bool) -> Result<ZeroTest> {
    let c0 = p.constant_term().to_complex64().norm();
    if c0 > p.coeff_norm1() - c0 + 1e-12 * c0.max(1.0) {
        return Ok(ZeroTest::Free);
    }
    let used = p.used_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(0x51ce);
    for _ in 0..24 {
        let mut slice = p.clone();
        let mut fixed = vec![Complex64::new(0.0, 0.0); p.dim()];
        for &v in &used[2..] {
            let den = 64i64;
            let re = rng.gen_range(-40..=40);
            let im = rng.gen_range(-40..=40);
            let val = GaussianRational::from_parts((re, den), (im, den));
            fixed[v] = val.to_complex64();
            slice = slice.substitute(v, &val);
        }
        if slice.is_zero() {
            return Ok(ZeroTest::Zero(fixed, vec![CirclePosition::Inside; p.dim()]));
        }
        if let ZeroTest::Zero(w, pos) = polydisk_zero(&slice, closed)? {
            let mut point = fixed.clone();
            let mut positions = vec![CirclePosition::Inside; p.dim()];
            for v in slice.used_vars() {
                point[v] = w[v];
                positions[v] = pos[v];
            }
            return Ok(ZeroTest::Zero(point, positions));
        }
    }
    Ok(ZeroTest::Uncertain(format!(
        "no zero found on random slices of D^{} and no dominance certificate",
        p.dim()
    )))
}
