//! Event angles on the circle and exact test points between them.

use std::f64::consts::PI;

use rug::Rational;

use crate::error::{Error, Result};
use crate::ideal::{buchberger, codimension, eliminant};
use crate::poly::{locate_roots, CirclePosition, GaussianRational, MultiPolynomial, TermOrder, UniPoly};

/// Arguments of the roots of `u` that are on, or too close to call against,
/// the unit circle.
pub(crate) fn unimodular_angles(u: &UniPoly) -> Vec<f64> {
    locate_roots(u)
        .into_iter()
        .filter(|r| matches!(r.position, CirclePosition::OnCircle | CirclePosition::Uncertain))
        .map(|r| r.value.arg())
        .collect()
}

/// Unimodular first coordinates of the finite variety `V(polys)` in two
/// variables, read off the eliminant in `z1`.
pub(crate) fn x_events(polys: &[MultiPolynomial]) -> Result<Vec<f64>> {
    let g = buchberger(polys, &TermOrder::grevlex(2))?;
    if g.is_unit_ideal() {
        return Ok(vec![]);
    }
    let basis = codimension(&g).monomials()?;
    let e = eliminant(&g, &basis, 0)?;
    Ok(unimodular_angles(&e))
}

/// Leading coefficient of a bivariate polynomial in `z2`, as a polynomial in `z1`.
pub(crate) fn leading_in_y(p: &MultiPolynomial) -> Result<UniPoly> {
    let lc = p.coefficients_in(1).pop().unwrap_or_else(|| MultiPolynomial::zero(2));
    UniPoly::from_multi(&lc, 0)
}

/// `((1 - s²) + 2si) / (1 + s²)`, the unimodular point of argument `2 atan s`.
fn cayley(s: &Rational) -> GaussianRational {
    let s2 = Rational::from(s * s);
    let den = Rational::from(&s2 + 1u32);
    let re = Rational::from(1u32 - &s2) / &den;
    let im = Rational::from(s * 2u32) / &den;
    GaussianRational::new(re, im)
}

/// Gaussian-rational unimodular point with argument strictly inside `(lo, hi)`.
fn point_in_arc(lo: f64, hi: f64) -> Option<GaussianRational> {
    let mid = 0.5 * (lo + hi);
    let margin = 0.25 * (hi - lo);
    let theta = angle_mod(mid);
    if (theta.abs() - PI).abs() < 1e-9 {
        return Some(GaussianRational::from_integer(-1));
    }
    let t = (theta / 2.0).tan();
    for k in 2..=62u32 {
        let scale = 2f64.powi(k as i32);
        let num = (t * scale).round();
        if !num.is_finite() || num.abs() > 9e15 {
            return None;
        }
        let s = Rational::from((num as i64, 1i64 << k.min(62)));
        let got = 2.0 * s.to_f64().atan();
        if angle_mod(got - mid).abs() < margin {
            return Some(cayley(&s));
        }
    }
    None
}

fn angle_mod(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

/// One exact unimodular point strictly inside every arc cut out by `events`.
pub(crate) fn arc_test_points(mut events: Vec<f64>) -> Result<Vec<GaussianRational>> {
    if events.is_empty() {
        return Ok(vec![GaussianRational::one()]);
    }
    for e in events.iter_mut() {
        *e = angle_mod(*e);
    }
    events.sort_by(f64::total_cmp);
    events.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let n = events.len();
    (0..n)
        .map(|k| {
            let lo = events[k];
            let hi = if k + 1 < n { events[k + 1] } else { events[0] + 2.0 * PI };
            point_in_arc(lo, hi)
                .ok_or_else(|| Error::IllConditioned(format!("no exact test point between angles {lo} and {hi}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_points_are_unimodular_and_inside_arcs() {
        let events = vec![0.0, 0.5, 0.5 + 1e-9, 3.0, -2.0];
        let pts = arc_test_points(events).unwrap();
        assert_eq!(pts.len(), 5);
        for p in &pts {
            assert_eq!(p.norm_sqr(), Rational::from(1));
        }
        let angles: Vec<f64> = pts.iter().map(|p| p.to_complex64().arg()).collect();
        assert!(angles[0] > -2.0 && angles[0] < 0.0);
        assert!(angles[2] > 0.5 && angles[2] < 0.5 + 1e-9);
        assert!(angles[4] > 3.0 || angles[4] < -2.0);
        assert_eq!(arc_test_points(vec![]).unwrap(), vec![GaussianRational::one()]);
        assert_eq!(arc_test_points(vec![0.0]).unwrap(), vec![GaussianRational::from_integer(-1)]);
    }
}
