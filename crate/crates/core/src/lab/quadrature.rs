//! Composite Gauss–Legendre rules for the area measure `dA = r dr dθ / π`.

use serde::{Deserialize, Serialize};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n > 0);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// Apply a reference rule to `[a, b]`, appending to `out`.
pub(crate) fn push_panel(rule: &[(f64, f64)], a: f64, b: f64, out: &mut Vec<(f64, f64)>) {
    let h = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    out.extend(rule.iter().map(|&(x, w)| (c + h * x, h * w)));
}

/// Quadrature layout for a Gram matrix of degree cap `degree_cap`.
///
/// The radial rule covers `[0, 1]` with panels no wider than `4 / (2N + 2n + 2)`
/// and dyadic panels clustered at `1 - 2^{-j}`. Angular integrals of the
/// arc-distance weights are done per gap, on panels graded geometrically in
/// `1 - r` away from each arc endpoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    pub degree_cap: usize,
    pub derivative_order: u32,
    /// `(r, weight)` pairs; weights integrate `dr` on `[0, 1]`.
    pub radial: Vec<(f64, f64)>,
    pub radial_order: usize,
    pub dyadic_levels: u32,
    pub angular_order: usize,
    pub angular_max_width: f64,
    /// Significant decimal digits carried in the Gram assembly.
    pub digits: u32,
}

impl QuadratureGrid {
    pub fn new(degree_cap: usize, derivative_order: u32, digits: u32) -> Self {
        let radial_order = 16;
        let dyadic_levels = 30;
        let rule = gauss_legendre(radial_order);
        let top = (2 * degree_cap + 2) as f64;
        let max_width = 4.0 / top;
        let mut radial = Vec::new();
        let split = |a: f64, b: f64, radial: &mut Vec<(f64, f64)>| {
            let m = ((b - a) / max_width).ceil().max(1.0) as usize;
            let h = (b - a) / m as f64;
            for i in 0..m {
                push_panel(&rule, a + i as f64 * h, a + (i + 1) as f64 * h, radial);
            }
        };
        split(0.0, 0.5, &mut radial);
        for j in 1..dyadic_levels {
            let a = 1.0 - 0.5f64.powi(j as i32);
            let b = 1.0 - 0.5f64.powi(j as i32 + 1);
            split(a, b, &mut radial);
        }
        split(1.0 - 0.5f64.powi(dyadic_levels as i32), 1.0, &mut radial);
        Self {
            degree_cap,
            derivative_order,
            radial,
            radial_order,
            dyadic_levels,
            angular_order: 24,
            angular_max_width: 0.25,
            digits,
        }
    }

    /// Nodes and weights for `∫_0^{len} g(φ) exp(-2 sin(φ/2)/s) dφ`, where `g`
    /// is smooth on the scale of `1/N`. Nodes beyond the point where the
    /// exponential drops below `10^{-(digits+10)}` are dropped.
    pub(crate) fn gap_rule(&self, s: f64, len: f64) -> Vec<(f64, f64)> {
        let fine = gauss_legendre(16);
        let wide = gauss_legendre(self.angular_order);
        let budget = (self.digits as f64 + 10.0) * std::f64::consts::LN_10;
        let x = budget * s / 2.0;
        let cutoff = if x >= 1.0 { len } else { (2.0 * x.asin()).min(len) };
        let mut out = Vec::new();
        let mut a = 0.0;
        for k in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0] {
            let b = (k * s).min(cutoff);
            if b <= a {
                break;
            }
            let pieces = ((b - a) / self.angular_max_width).ceil().max(1.0) as usize;
            let h = (b - a) / pieces as f64;
            for i in 0..pieces {
                push_panel(&fine, a + i as f64 * h, a + (i + 1) as f64 * h, &mut out);
            }
            a = b;
        }
        if cutoff > a {
            let pieces = ((cutoff - a) / self.angular_max_width).ceil().max(1.0) as usize;
            let h = (cutoff - a) / pieces as f64;
            for i in 0..pieces {
                push_panel(&wide, a + i as f64 * h, a + (i + 1) as f64 * h, &mut out);
            }
        }
        out
    }

    /// Largest relative error of the radial rule on `∫_0^1 r^{2k+1} dr` for `k ≤ cap`.
    pub fn radial_check(&self) -> f64 {
        let top = self.degree_cap + self.derivative_order as usize;
        (0..=top)
            .map(|k| {
                let approx: f64 = self.radial.iter().map(|&(r, w)| w * r.powi(2 * k as i32 + 1)).sum();
                let exact = 1.0 / (2 * k + 2) as f64;
                ((approx - exact) / exact).abs()
            })
            .fold(0.0, f64::max)
    }
}
