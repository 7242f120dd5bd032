//! Weights `v` on the disk built from closed arc sets on the circle.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The closed arc `{e^{iθ} : |θ - center| ≤ half_width}` (angles in radians).
/// `half_width = 0` is a single point; `half_width ≥ π` is the whole circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub center: f64,
    pub half_width: f64,
}

impl Arc {
    pub fn new(center: f64, half_width: f64) -> Self {
        Self { center, half_width }
    }

    fn validate(&self) -> Result<()> {
        if !self.center.is_finite() || !self.half_width.is_finite() || self.half_width < 0.0 {
            return Err(Error::InvalidInput(format!(
                "arc needs a finite center and a nonnegative half-width, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Signed angle difference reduced to `(-π, π]`.
pub(crate) fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    if d > PI {
        d - 2.0 * PI
    } else {
        d
    }
}

/// Chord length for an angular gap `g ∈ [0, π]`.
pub(crate) fn chord(g: f64) -> f64 {
    2.0 * (g.clamp(0.0, PI) / 2.0).sin()
}

/// Angular distance from `θ` to an arc (0 on the arc).
fn angular_gap(theta: f64, arc: &Arc) -> f64 {
    (angle_diff(theta, arc.center).abs() - arc.half_width).max(0.0)
}

/// Planar distance from `e^{iθ}` to a union of arcs.
pub fn dist_to_arcs(theta: f64, arcs: &[Arc]) -> f64 {
    arcs.iter()
        .map(|a| chord(angular_gap(theta, a)))
        .fold(f64::INFINITY, f64::min)
}

/// Planar distance between two unions of arcs.
pub fn dist_between(a: &[Arc], b: &[Arc]) -> f64 {
    let mut best = f64::INFINITY;
    for x in a {
        for y in b {
            let gap = (angle_diff(x.center, y.center).abs() - x.half_width - y.half_width).max(0.0);
            best = best.min(chord(gap));
        }
    }
    best
}

/// A disjoint, sorted decomposition of an arc set into on-arc intervals
/// `[start, end]` with `start ∈ [-π, π)` and `end > start`.
pub(crate) fn merged_intervals(arcs: &[Arc]) -> Vec<(f64, f64)> {
    if arcs.iter().any(|a| a.half_width >= PI) {
        return vec![(-PI, PI)];
    }
    let mut iv: Vec<(f64, f64)> = arcs
        .iter()
        .map(|a| {
            let s = angle_diff(a.center - a.half_width, 0.0);
            let s = if s >= PI { s - 2.0 * PI } else { s };
            (s, s + 2.0 * a.half_width)
        })
        .collect();
    iv.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (s, e) in iv {
        match out.last_mut() {
            Some(last) if s <= last.1 => last.1 = last.1.max(e),
            _ => out.push((s, e)),
        }
    }
    // Wrap-around overlap between the last and first interval.
    if out.len() > 1 {
        let first = out[0];
        let last = *out.last().expect("nonempty");
        if last.1 >= first.0 + 2.0 * PI {
            out.pop();
            out[0] = (last.0 - 2.0 * PI, first.1.max(last.1 - 2.0 * PI));
        }
    }
    if out.iter().map(|(s, e)| e - s).sum::<f64>() >= 2.0 * PI {
        return vec![(-PI, PI)];
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub arcs: Vec<Arc>,
    pub coefficient: f64,
}

/// Declarative weight. `ClosedArcSet` is `exp(-dist(z/|z|, Γ)/(1-|z|))`;
/// `Series` sums such weights; `AutoSeries` takes its coefficients from
/// [`auto_coefficients`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightSpec {
    Constant { c: f64 },
    ClosedArcSet { arcs: Vec<Arc> },
    Series { components: Vec<SeriesTerm> },
    AutoSeries { gammas: Vec<Vec<Arc>>, complements: Vec<Vec<Arc>> },
}

/// A validated weight: `constant + Σ_k a_k v_{Γ_k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight {
    pub constant: f64,
    pub components: Vec<(f64, Vec<Arc>)>,
    /// Upper bound for the omitted tail of an infinite series, in sup norm.
    pub truncation_bound: f64,
}

impl WeightSpec {
    pub fn resolve(&self) -> Result<Weight> {
        let check_arcs = |arcs: &[Arc]| -> Result<()> {
            if arcs.is_empty() {
                return Err(Error::InvalidInput("arc set must be nonempty".into()));
            }
            arcs.iter().try_for_each(Arc::validate)
        };
        match self {
            Self::Constant { c } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::InvalidInput(format!("constant weight must be positive, got {c}")));
                }
                Ok(Weight { constant: *c, components: vec![], truncation_bound: 0.0 })
            }
            Self::ClosedArcSet { arcs } => {
                check_arcs(arcs)?;
                Ok(Weight { constant: 0.0, components: vec![(1.0, arcs.clone())], truncation_bound: 0.0 })
            }
            Self::Series { components } => {
                if components.is_empty() {
                    return Err(Error::InvalidInput("series weight needs at least one component".into()));
                }
                for t in components {
                    check_arcs(&t.arcs)?;
                    if !(t.coefficient.is_finite() && t.coefficient > 0.0) {
                        return Err(Error::InvalidInput("series coefficients must be positive".into()));
                    }
                }
                Ok(Weight {
                    constant: 0.0,
                    components: components.iter().map(|t| (t.coefficient, t.arcs.clone())).collect(),
                    truncation_bound: 0.0,
                })
            }
            Self::AutoSeries { gammas, complements } => {
                gammas.iter().chain(complements).try_for_each(|a| check_arcs(a))?;
                let a = auto_coefficients(gammas, complements)?;
                Ok(Weight {
                    constant: 0.0,
                    components: a.iter().copied().zip(gammas.iter().cloned()).collect(),
                    // a_k ≤ 2^{-k}, so the omitted tail is at most 2^{1-K}.
                    truncation_bound: 2f64.powi(1 - gammas.len() as i32),
                })
            }
        }
    }
}

impl Weight {
    pub fn eval(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let theta = z.arg();
        let s = 1.0 - r;
        self.constant
            + self
                .components
                .iter()
                .map(|(a, arcs)| {
                    let d = dist_to_arcs(theta, arcs);
                    if d == 0.0 {
                        *a
                    } else {
                        a * (-d / s).exp()
                    }
                })
                .sum::<f64>()
    }

    /// `dist(w, Γ)` for `Γ` the union of all component arc sets.
    pub fn dist_to_support(&self, w: Complex64) -> f64 {
        if self.constant > 0.0 {
            return 0.0;
        }
        let all: Vec<Arc> = self.components.iter().flat_map(|(_, a)| a.iter().copied()).collect();
        // Distance from an arbitrary point to the nearest endpoint or arc point.
        let mut best = f64::INFINITY;
        for a in &all {
            let g = angular_gap(w.arg(), a);
            let nearest = if g == 0.0 {
                Complex64::from_polar(1.0, w.arg())
            } else {
                let d = angle_diff(w.arg(), a.center);
                Complex64::from_polar(1.0, a.center + d.signum() * a.half_width.min(PI))
            };
            best = best.min((w - nearest).norm());
        }
        best
    }
}

/// `a_k = 2^{-k} ∏_{j=0}^{min(k, L-1)} (d_{k,j}/2)^6` with
/// `d_{k,j} = dist(Γ_k, C_j)` and `L` the number of complement sets given.
pub fn auto_coefficients(gammas: &[Vec<Arc>], complements: &[Vec<Arc>]) -> Result<Vec<f64>> {
    if gammas.is_empty() {
        return Err(Error::Empty("gamma components"));
    }
    let mut out = Vec::with_capacity(gammas.len());
    for (k, g) in gammas.iter().enumerate() {
        let mut a = 0.5f64.powi(k as i32);
        for (j, c) in complements.iter().enumerate().take(k + 1) {
            let d = dist_between(g, c);
            if d <= 0.0 {
                return Err(Error::NonDisjoint { k, l: j });
            }
            a *= (d / 2.0).powi(6);
        }
        out.push(a);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn arc_around_one() -> Vec<Arc> {
        vec![Arc::new(0.0, PI / 4.0)]
    }

    #[test]
    fn weight_examples() {
        let c = WeightSpec::Constant { c: 1.0 }.resolve().unwrap();
        assert_eq!(c.eval(Complex64::new(0.3, -0.2)), 1.0);
        let full = WeightSpec::ClosedArcSet { arcs: vec![Arc::new(0.0, PI)] }.resolve().unwrap();
        assert_eq!(full.eval(Complex64::new(-0.9, 0.0)), 1.0);
        let point = WeightSpec::ClosedArcSet { arcs: vec![Arc::new(0.0, 0.0)] }.resolve().unwrap();
        let r = 0.4;
        let v = point.eval(Complex64::new(-r, 0.0));
        assert!((v - (-2.0 / (1.0 - r)).exp()).abs() < 1e-15);
    }

    #[test]
    fn auto_coefficient_examples() {
        let g0 = vec![Arc::new(0.0, 0.1)];
        // d_{0,0} = 2 needs antipodal points.
        let a = auto_coefficients(&[vec![Arc::new(0.0, 0.0)]], &[vec![Arc::new(PI, 0.0)]]).unwrap();
        assert!((a[0] - 1.0).abs() < 1e-15);
        // d_{0,0} = 1: chord 1 is an angular gap of π/3.
        let a = auto_coefficients(&[vec![Arc::new(0.0, 0.0)]], &[vec![Arc::new(PI / 3.0, 0.0)]]).unwrap();
        assert!((a[0] - 1.0 / 64.0).abs() < 1e-15);
        let pts = vec![Arc::new(0.0, 0.0)];
        let anti = vec![Arc::new(PI, 0.0)];
        let a = auto_coefficients(&[g0.clone(), pts], &[anti.clone(), anti]).unwrap();
        assert!((a[1] - 0.5).abs() < 1e-15);
        assert_eq!(
            auto_coefficients(std::slice::from_ref(&g0), &[vec![Arc::new(0.15, 0.1)]]),
            Err(Error::NonDisjoint { k: 0, l: 0 })
        );
    }

    #[test]
    fn merged_intervals_handle_wraparound() {
        let iv = merged_intervals(&[Arc::new(PI, 0.2), Arc::new(-PI + 0.1, 0.2)]);
        assert_eq!(iv.len(), 1);
        assert!((iv[0].1 - iv[0].0 - 0.5).abs() < 1e-12);
        let iv = merged_intervals(&[Arc::new(0.0, 0.1), Arc::new(1.0, 0.1)]);
        assert_eq!(iv.len(), 2);
        assert_eq!(merged_intervals(&[Arc::new(0.0, 4.0)]), vec![(-PI, PI)]);
    }

    #[test]
    fn weights_are_positive_and_radially_monotone() {
        let specs = [
            WeightSpec::ClosedArcSet { arcs: arc_around_one() },
            WeightSpec::AutoSeries {
                gammas: vec![vec![Arc::new(0.0, 0.3)], vec![Arc::new(PI, 0.3)]],
                complements: vec![vec![Arc::new(PI / 2.0, 0.2)], vec![Arc::new(-PI / 2.0, 0.2)]],
            },
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for spec in specs {
            let w = spec.resolve().unwrap();
            for _ in 0..10_000 {
                let rad: f64 = rng.gen_range(0.01..0.999);
                let z = Complex64::from_polar(rad, rng.gen_range(-PI..PI));
                let t: f64 = rng.gen_range(0.0..1.0);
                let v = w.eval(z);
                if rad <= 0.9 {
                    assert!(v > 1e-12);
                }
                assert!(v <= w.eval(z * t) + 1e-300);
            }
        }
    }

    proptest! {
        #[test]
        fn auto_coefficients_are_summable(k in 1usize..12, seed in 0u64..1000) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let gammas: Vec<Vec<Arc>> = (0..k).map(|_| vec![Arc::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.0..0.2))]).collect();
            let comps: Vec<Vec<Arc>> = (0..k).map(|_| vec![Arc::new(PI + rng.gen_range(-0.5..0.5), rng.gen_range(0.0..0.2))]).collect();
            let a = auto_coefficients(&gammas, &comps).unwrap();
            let sum: f64 = a.iter().sum();
            prop_assert!(sum <= 2.0);
            for (j, x) in a.iter().enumerate() {
                prop_assert!(*x > 0.0 && *x <= 0.5f64.powi(j as i32));
            }
        }
    }
}
