//! Truncated evaluation functionals and boundary classification.

use num_complex::Complex64;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::gram::GramMatrix;
use super::mp::{set_f64, Mpc};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Bounded,
    Divergent,
    Inconclusive,
}

/// Log-slope thresholds for the growth of `λ_N` in `N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub slope_lo: f64,
    pub slope_hi: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { slope_lo: 0.3, slope_hi: 1.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelDiagnostic {
    pub w: Complex64,
    /// `(N, λ_N(w))`.
    pub samples: Vec<(usize, f64)>,
    /// `(N, δ_N(w))`, from the independent least-squares route.
    pub distances: Vec<(usize, f64)>,
    pub classification: Classification,
    pub distance_classification: Classification,
    /// Least-squares slope of `log λ_N` against `log N` over the top half of the schedule.
    pub slope: f64,
    /// Same fit for `log δ_N`.
    pub distance_slope: f64,
    pub monotone: bool,
    pub ill_conditioned: bool,
    pub thresholds: Thresholds,
}

/// `λ_N(w) = Σ_{k ≤ N} |φ_k(w)|²` for each `N` in `schedule`.
pub fn lambda_schedule(g: &GramMatrix, w: Complex64, schedule: &[usize]) -> Result<Vec<f64>> {
    check_schedule(g, schedule, 0)?;
    let top = *schedule.last().expect("checked nonempty");
    let vals = g.basis_values(w, top);
    let mut acc = Float::new(g.prec);
    let mut out = Vec::with_capacity(schedule.len());
    let mut next = schedule.iter().peekable();
    for (k, v) in vals.iter().enumerate() {
        acc += v.norm_sqr();
        while next.peek().is_some_and(|&&n| n == k) {
            out.push(acc.to_f64());
            next.next();
        }
    }
    Ok(out)
}

/// `λ_N(w)`, the squared norm of point evaluation at `w` on `P_N`.
pub fn lambda_n(g: &GramMatrix, w: Complex64, n: usize) -> Result<f64> {
    Ok(lambda_schedule(g, w, &[n])?[0])
}

fn check_schedule(g: &GramMatrix, schedule: &[usize], min: usize) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::Empty("degree schedule"));
    }
    if schedule.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidInput("degree schedule must be strictly increasing".into()));
    }
    if schedule[0] < min || *schedule.last().expect("nonempty") > g.degree_cap {
        return Err(Error::InvalidInput(format!(
            "schedule must lie in [{min}, {}], got {schedule:?}",
            g.degree_cap
        )));
    }
    Ok(())
}

/// `δ_N(w) = min_{deg q ≤ N-1} ‖1 - (z - w) q‖` for each `N` in `schedule`.
///
/// Solves the normal equations for `b_k = z^{k+1} - w z^k` by a nested
/// Cholesky factorization, independently of the orthonormal basis.
pub fn distance_schedule(g: &GramMatrix, w: Complex64, schedule: &[usize]) -> Result<Vec<f64>> {
    check_schedule(g, schedule, 1)?;
    let prec = g.prec;
    let top = *schedule.last().expect("checked nonempty");
    let wm = Mpc::from_c64(prec, w);
    let wc = wm.conj();
    let w2 = wm.norm_sqr();
    let e = &g.entries;
    // M[k][l] = ⟨b_l, b_k⟩, r_k = ⟨1, b_k⟩.
    let inner = |l: usize, k: usize| -> Mpc {
        let mut m = e[l + 1][k + 1].clone();
        m.sub_mul(&wc, &e[l + 1][k]);
        m.sub_mul(&wm, &e[l][k + 1]);
        m.add_scaled(&w2, &e[l][k]);
        m
    };
    let mut lower: Vec<Vec<Mpc>> = Vec::with_capacity(top);
    let mut diag: Vec<Float> = Vec::with_capacity(top);
    let mut y: Vec<Mpc> = Vec::with_capacity(top);
    let mut proj = Float::new(prec);
    let mut total = e[0][0].re.clone();
    let mut out = Vec::with_capacity(schedule.len());
    let mut next = schedule.iter().peekable();
    for k in 0..top {
        // Row k of L with M = L L^H.
        let mut row: Vec<Mpc> = Vec::with_capacity(k);
        for l in 0..k {
            let mut s = inner(l, k);
            for (a, b) in row.iter().zip(&lower[l]).take(l) {
                s.sub_mul(a, &b.conj());
            }
            let s = s.scale(&Float::with_val(prec, 1u32 / &diag[l]));
            row.push(s);
        }
        let mut d = inner(k, k).re;
        for a in &row {
            d -= a.norm_sqr();
        }
        if !(d.is_finite() && d > 0) {
            return Err(Error::IllConditioned(format!("least-squares system singular at N = {}", k + 1)));
        }
        d.sqrt_mut();
        // Forward substitution: y_k = (r_k - Σ L[k][l] y_l) / L[k][k].
        let mut rk = e[0][k + 1].clone();
        rk.sub_mul(&wc, &e[0][k]);
        for (a, yl) in row.iter().zip(&y) {
            rk.sub_mul(a, yl);
        }
        let yk = rk.scale(&Float::with_val(prec, 1u32 / &d));
        proj += yk.norm_sqr();
        y.push(yk);
        diag.push(d);
        lower.push(row);
        if next.peek().is_some_and(|&&n| n == k + 1) {
            set_f64(&mut total, 0.0);
            total += &e[0][0].re;
            total -= &proj;
            out.push(total.to_f64().max(0.0).sqrt());
            next.next();
        }
    }
    Ok(out)
}

/// `δ_N(w)` for a single cap.
pub fn dist_to_invariant_subspace(g: &GramMatrix, w: Complex64, n: usize) -> Result<f64> {
    Ok(distance_schedule(g, w, &[n])?[0])
}

/// Least-squares slope of `log y` against `log N` over the top half of the samples.
pub fn log_slope(samples: &[(usize, f64)]) -> f64 {
    let half = &samples[samples.len() / 2..];
    let half = if half.len() < 2 { samples } else { half };
    let pts: Vec<(f64, f64)> = half.iter().map(|&(n, y)| ((n as f64).ln(), y.ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Relative slack allowed when checking monotonicity in `N`.
const MONOTONE_SLACK: f64 = 1e-10;

/// Classify `w` by the growth of `λ_N(w)` over `schedule`, with the
/// `δ_N(w)` route computed alongside as a cross-check.
pub fn classify_point(g: &GramMatrix, w: Complex64, schedule: &[usize], thresholds: Thresholds) -> Result<KernelDiagnostic> {
    if schedule.len() < 2 {
        return Err(Error::InvalidInput("classification needs at least two degrees".into()));
    }
    let lambdas = lambda_schedule(g, w, schedule)?;
    let (distances, ill) = match distance_schedule(g, w, schedule) {
        Ok(d) => (d, false),
        Err(Error::IllConditioned(_)) => (vec![f64::NAN; schedule.len()], true),
        Err(e) => return Err(e),
    };
    let samples: Vec<(usize, f64)> = schedule.iter().copied().zip(lambdas).collect();
    let dist: Vec<(usize, f64)> = schedule.iter().copied().zip(distances).collect();
    let monotone = samples.windows(2).all(|p| p[1].1 >= p[0].1 * (1.0 - MONOTONE_SLACK))
        && dist.windows(2).all(|p| !(p[1].1 > p[0].1 * (1.0 + MONOTONE_SLACK)));
    let slope = log_slope(&samples);
    let distance_slope = log_slope(&dist);
    let mut classification = if slope < thresholds.slope_lo {
        Classification::Bounded
    } else if slope > thresholds.slope_hi {
        Classification::Divergent
    } else {
        Classification::Inconclusive
    };
    // δ² and 1/λ agree in the limit, so δ gets half the λ thresholds.
    let mut distance_classification = if !distance_slope.is_finite() {
        Classification::Inconclusive
    } else if distance_slope > -thresholds.slope_lo / 2.0 {
        Classification::Bounded
    } else if distance_slope < -thresholds.slope_hi / 2.0 {
        Classification::Divergent
    } else {
        Classification::Inconclusive
    };
    if !monotone || ill {
        classification = Classification::Inconclusive;
        distance_classification = Classification::Inconclusive;
    }
    Ok(KernelDiagnostic {
        w,
        samples,
        distances: dist,
        classification,
        distance_classification,
        slope,
        distance_slope,
        monotone,
        ill_conditioned: ill,
        thresholds,
    })
}

#[cfg(test)]
mod tests {
    use super::super::gram::{gram_matrix, WeightedSpace};
    use super::super::quadrature::QuadratureGrid;
    use super::super::WeightSpec;
    use super::*;

    fn bergman(cap: usize) -> GramMatrix {
        let space = WeightedSpace { weight: WeightSpec::Constant { c: 1.0 }, n: 0 };
        gram_matrix(&space, cap, &QuadratureGrid::new(cap, 0, 70)).unwrap()
    }

    #[test]
    fn bergman_closed_forms() {
        let g = bergman(40);
        let sched: Vec<usize> = (0..=40).collect();
        assert!(lambda_schedule(&g, Complex64::new(0.0, 0.0), &sched).unwrap().iter().all(|&l| (l - 1.0).abs() < 1e-14));
        let ones = lambda_schedule(&g, Complex64::new(1.0, 0.0), &sched).unwrap();
        for (n, l) in ones.iter().enumerate() {
            let exact = ((n + 1) * (n + 2) / 2) as f64;
            assert!((l - exact).abs() < 1e-10 * exact);
        }
        let w = Complex64::from_polar(0.5f64.sqrt(), 0.7);
        let mid = lambda_schedule(&g, w, &sched).unwrap();
        let mut exact = 0.0;
        for (n, l) in mid.iter().enumerate() {
            exact += (n + 1) as f64 * 0.5f64.powi(n as i32);
            assert!((l - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn bergman_distance() {
        let g = bergman(20);
        let d = dist_to_invariant_subspace(&g, Complex64::new(0.0, 0.0), 1).unwrap();
        assert!((d - 1.0).abs() < 1e-14);
        // Duality with the evaluation functional: δ_∞(w)² = 1/λ_∞(w) for |w| < 1.
        let w = Complex64::new(0.3, 0.2);
        let d = dist_to_invariant_subspace(&g, w, 20).unwrap();
        let l = lambda_n(&g, w, 20).unwrap();
        assert!((d * d * l - 1.0).abs() < 1e-8);
        let sched = [1, 2, 5, 10, 20];
        let ds = distance_schedule(&g, Complex64::new(1.0, 0.0), &sched).unwrap();
        assert!(ds.windows(2).all(|p| p[1] <= p[0]));
    }

    #[test]
    fn bergman_boundary_is_divergent() {
        let g = bergman(60);
        let d = classify_point(&g, Complex64::new(1.0, 0.0), &[10, 20, 30, 40, 50, 60], Thresholds::default()).unwrap();
        assert_eq!(d.classification, Classification::Divergent);
        assert_eq!(d.distance_classification, Classification::Divergent);
        assert!(d.monotone);
    }

    #[test]
    fn schedule_validation() {
        let g = bergman(5);
        assert!(lambda_schedule(&g, Complex64::new(0.0, 0.0), &[]).is_err());
        assert!(lambda_schedule(&g, Complex64::new(0.0, 0.0), &[3, 2]).is_err());
        assert!(lambda_schedule(&g, Complex64::new(0.0, 0.0), &[6]).is_err());
        assert!(distance_schedule(&g, Complex64::new(0.0, 0.0), &[0]).is_err());
    }
}
