//! Zeros of a bivariate polynomial on the torus `T²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::arcs::{arc_test_points, leading_in_y, x_events};
use crate::error::{Error, Result};
use crate::ideal::{buchberger, circle_positions, solve_variety, SolveOptions};
use crate::poly::{
    content_split, divide_exact, gcd, locate_roots, CirclePosition, MultiPolynomial, TermOrder, UniPoly,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TorusZeros {
    /// Every zero on `T²`, sorted.
    Finite { points: Vec<[Complex64; 2]> },
    /// A factor vanishing on a curve in `T²`, in canonical term form.
    Infinite { witness: Vec<String> },
    Uncertain { reason: String },
}

impl TorusZeros {
    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite { .. })
    }

    pub fn witness_factor(&self) -> Option<MultiPolynomial> {
        match self {
            Self::Infinite { witness } => MultiPolynomial::from_canonical(2, witness).ok(),
            _ => None,
        }
    }
}

enum Scan {
    Clear,
    Hit(MultiPolynomial),
    Unsure(String),
}

/// Unimodular roots of a one-variable factor `c` (in variable `var`).
fn univariate_factor(c: &MultiPolynomial, var: usize) -> Result<Scan> {
    let u = UniPoly::from_multi(c, var)?;
    let roots = locate_roots(&u);
    if roots.iter().any(|r| r.position == CirclePosition::OnCircle) {
        return Ok(Scan::Hit(gcd(c, &c.reflect())?));
    }
    if let Some(r) = roots.iter().find(|r| r.position == CirclePosition::Uncertain) {
        return Ok(Scan::Unsure(format!("root {} of a one-variable factor grazes the circle", r.value)));
    }
    Ok(Scan::Clear)
}

/// Points of the finite variety `V(polys)` lying on `T²`.
fn torus_points(polys: &[MultiPolynomial]) -> Result<std::result::Result<Vec<[Complex64; 2]>, String>> {
    let g = buchberger(polys, &TermOrder::grevlex(2))?;
    if g.is_unit_ideal() {
        return Ok(Ok(vec![]));
    }
    let sol = match solve_variety(&g, &SolveOptions::default()) {
        Ok(s) => s,
        Err(Error::IllConditioned(m)) => return Ok(Err(m)),
        Err(e) => return Err(e),
    };
    let pos = circle_positions(&g, &sol)?;
    let mut out = Vec::new();
    for (p, ps) in sol.points.iter().zip(pos) {
        if ps.iter().any(|x| matches!(x, CirclePosition::Inside | CirclePosition::Outside)) {
            continue;
        }
        if ps.iter().all(|x| *x == CirclePosition::OnCircle) {
            out.push([p.coords[0], p.coords[1]]);
        } else {
            return Ok(Err(format!("cannot decide whether ({}, {}) lies on the torus", p.coords[0], p.coords[1])));
        }
    }
    Ok(Ok(out))
}

/// Whether a squarefree, reflection-invariant `g`, primitive in both
/// variables, vanishes on a curve in `T²`. Roots of `g(ζ, ·)` are symmetric
/// under `y ↦ 1/ȳ`, so unimodular ones can only appear or disappear where
/// two roots meet; one test point per arc between such events suffices.
fn self_reflective_curve(g: &MultiPolynomial) -> Result<Scan> {
    let mut events = crate::catalog::arcs::unimodular_angles(&leading_in_y(g)?);
    events.extend(x_events(&[g.clone(), g.derivative(1, 1)?])?);
    let zetas = match arc_test_points(events) {
        Ok(z) => z,
        Err(Error::IllConditioned(m)) => return Ok(Scan::Unsure(m)),
        Err(e) => return Err(e),
    };
    for zeta in zetas {
        let slice = UniPoly::from_multi(&g.substitute(0, &zeta), 1)?;
        let roots = locate_roots(&slice);
        if roots.iter().any(|r| r.position == CirclePosition::OnCircle) {
            return Ok(Scan::Hit(g.clone()));
        }
        if roots.iter().any(|r| r.position == CirclePosition::Uncertain) {
            return Ok(Scan::Unsure(format!("slice at z1 = {zeta} has a root grazing the circle")));
        }
    }
    Ok(Scan::Clear)
}

/// Decide whether `P ∈ P_2` has finitely many zeros on `T²`, listing them
/// when it does.
pub fn torus_zero_finiteness(p: &MultiPolynomial) -> Result<TorusZeros> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: p.dim() });
    }
    if p.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial vanishes everywhere".into()));
    }
    let infinite = |f: MultiPolynomial| TorusZeros::Infinite { witness: f.monic().to_canonical() };

    let (cx, rest) = content_split(p, 1);
    let (cy, q) = content_split(&rest, 0);
    for (c, var) in [(&cx, 0), (&cy, 1)] {
        match univariate_factor(c, var)? {
            Scan::Clear => {}
            Scan::Hit(f) => return Ok(infinite(f)),
            Scan::Unsure(reason) => return Ok(TorusZeros::Uncertain { reason }),
        }
    }
    if q.is_constant() {
        return Ok(TorusZeros::Finite { points: vec![] });
    }

    let q_sf = divide_exact(&q, &gcd(&q, &q.derivative(1, 1)?)?)?;
    let g = gcd(&q_sf, &q_sf.reflect())?;
    let r = divide_exact(&q_sf, &g)?;

    let mut points = Vec::new();
    if !g.is_constant() {
        match self_reflective_curve(&g)? {
            Scan::Clear => {}
            Scan::Hit(f) => return Ok(infinite(f)),
            Scan::Unsure(reason) => return Ok(TorusZeros::Uncertain { reason }),
        }
        match torus_points(&[g.clone(), g.derivative(1, 1)?])? {
            Ok(pts) => points.extend(pts),
            Err(reason) => return Ok(TorusZeros::Uncertain { reason }),
        }
    }
    if !r.is_constant() {
        // r and its reflection are coprime, so their common zeros are finite.
        match torus_points(&[r.clone(), r.reflect()])? {
            Ok(pts) => points.extend(pts),
            Err(reason) => return Ok(TorusZeros::Uncertain { reason }),
        }
    }
    points.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    points.dedup_by(|a, b| a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() < 1e-9));
    Ok(TorusZeros::Finite { points })
}
