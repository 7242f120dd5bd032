//! Quadrature estimate of `‖(z - w)^{-3}‖²_v` for `|w| ≥ 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature::{gauss_legendre, push_panel};
use super::weight::{merged_intervals, Weight, WeightSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReciprocalNorm {
    pub w: Complex64,
    pub value: f64,
    /// `dist(w, Γ)`; zero for a constant weight.
    pub dist: f64,
    /// `value · dist^6`.
    pub ratio: f64,
    /// `(refinement level, estimate)` in the order computed.
    pub levels: Vec<(u32, f64)>,
}

const LEVELS: [u32; 4] = [8, 12, 16, 20];
const AGREEMENT: f64 = 0.05;

/// Grade `[a, b]` geometrically toward both ends down to `2^{-level}·(b-a)`.
fn graded(a: f64, b: f64, level: u32, rule: &[(f64, f64)], out: &mut Vec<(f64, f64)>) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut cuts = vec![0.0];
    for k in (0..level).rev() {
        cuts.push(half * 0.5f64.powi(k as i32));
    }
    for p in cuts.windows(2) {
        push_panel(rule, a + p[0], a + p[1], out);
        push_panel(rule, b - p[1], b - p[0], out);
    }
    debug_assert!((a + cuts[cuts.len() - 1] - mid).abs() < 1e-12 * (1.0 + mid.abs()));
}

fn estimate(weight: &Weight, w: Complex64, breaks: &[f64], level: u32) -> f64 {
    let rule = gauss_legendre(10);
    let mut radial = Vec::new();
    graded(0.0, 1.0, 2, &rule, &mut radial);
    radial.retain(|&(r, _)| r < 0.75);
    let mut a = 0.75;
    for j in 3..=level {
        let b = 1.0 - 0.5f64.powi(j as i32);
        push_panel(&rule, a, b, &mut radial);
        a = b;
    }
    push_panel(&rule, a, 1.0, &mut radial);
    let mut angular = Vec::new();
    for i in 0..breaks.len() {
        let lo = breaks[i];
        let hi = if i + 1 < breaks.len() { breaks[i + 1] } else { breaks[0] + 2.0 * PI };
        if hi > lo {
            graded(lo, hi, level, &rule, &mut angular);
        }
    }
    let mut total = 0.0;
    for &(r, wr) in &radial {
        for &(t, wt) in &angular {
            let z = Complex64::from_polar(r, t);
            let v = weight.eval(z);
            if v > 0.0 {
                total += wr * wt * r * v / (z - w).norm_sqr().powi(3);
            }
        }
    }
    total / PI
}

/// Estimate `∫_D |z - w|^{-6} v(z) dA(z)` on successively refined grids.
pub fn reciprocal_norm(weight: &WeightSpec, w: Complex64) -> Result<ReciprocalNorm> {
    if !(w.norm() >= 1.0 - 1e-12) {
        return Err(Error::InvalidInput(format!("reciprocal norm needs |w| ≥ 1, got |w| = {}", w.norm())));
    }
    let weight = weight.resolve()?;
    let mut breaks = vec![w.arg()];
    for (_, arcs) in &weight.components {
        for (s, e) in merged_intervals(arcs) {
            breaks.push(s);
            breaks.push(e);
        }
    }
    let mut breaks: Vec<f64> = breaks
        .into_iter()
        .map(|t| (t + PI).rem_euclid(2.0 * PI) - PI)
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let mut levels = Vec::new();
    for &l in &LEVELS {
        levels.push((l, estimate(&weight, w, &breaks, l)));
    }
    let previous = levels[levels.len() - 2].1;
    let current = levels[levels.len() - 1].1;
    if !current.is_finite() || (current - previous).abs() > AGREEMENT * current.abs() {
        return Err(Error::NonConvergent { previous, current });
    }
    let dist = weight.dist_to_support(w);
    Ok(ReciprocalNorm { w, value: current, dist, ratio: current * dist.powi(6), levels })
}
