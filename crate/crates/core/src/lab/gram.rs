//! Gram matrices of monomials in `H_{v,n}` and their orthonormalization.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::mp::{pi, precision_bits, set_f64, Mpc};
use super::quadrature::QuadratureGrid;
use super::weight::{merged_intervals, Weight, WeightSpec};
use crate::error::{Error, Result};

/// A weighted space `H_{v,n}` on the disk: `‖F‖² = Σ_{m ≤ n} ‖F^{(m)}‖²_v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedSpace {
    pub weight: WeightSpec,
    pub n: u32,
}

/// One gap between consecutive arcs of a component, split at its midpoint.
struct Gap {
    half: f64,
    /// `e^{iq·left}` and `e^{iq·right}` for `q ≤ N`.
    left_phase: Vec<Mpc>,
    right_phase: Vec<Mpc>,
}

struct Component {
    coefficient: f64,
    gaps: Vec<Gap>,
    /// `∫_Γ e^{iqθ} dθ` over the on-arc part, where the weight is `1`.
    on_arc: Vec<Mpc>,
}

fn phases(prec: u32, theta: f64, count: usize) -> Vec<Mpc> {
    let mut out = Vec::with_capacity(count);
    let u = Mpc::cis(prec, &Float::with_val(prec, theta));
    let mut z = Mpc::real(Float::with_val(prec, 1));
    for _ in 0..count {
        let next = z.mul(&u);
        out.push(std::mem::replace(&mut z, next));
    }
    out
}

fn component(prec: u32, coefficient: f64, arcs: &[super::Arc], qmax: usize) -> Component {
    let iv = merged_intervals(arcs);
    let mut on_arc = vec![Mpc::zero(prec); qmax + 1];
    for &(a, b) in &iv {
        let fa = Float::with_val(prec, a);
        let fb = Float::with_val(prec, b);
        on_arc[0].re += Float::with_val(prec, &fb - &fa);
        for (q, slot) in on_arc.iter_mut().enumerate().skip(1) {
            // (e^{iqb} - e^{iqa}) / (iq)
            let qa = Float::with_val(prec, &fa * q as u32);
            let qb = Float::with_val(prec, &fb * q as u32);
            let (sb, cb) = qb.sin_cos(Float::new(prec));
            let (sa, ca) = qa.sin_cos(Float::new(prec));
            slot.re += Float::with_val(prec, &sb - &sa) / q as u32;
            slot.im -= Float::with_val(prec, &cb - &ca) / q as u32;
        }
    }
    let mut gaps = Vec::new();
    if !(iv.len() == 1 && iv[0].1 - iv[0].0 >= 2.0 * PI) {
        for (i, &(_, end)) in iv.iter().enumerate() {
            let next = iv[(i + 1) % iv.len()].0 + if i + 1 == iv.len() { 2.0 * PI } else { 0.0 };
            let len = next - end;
            if len <= 0.0 {
                continue;
            }
            gaps.push(Gap {
                half: len / 2.0,
                left_phase: phases(prec, end, qmax + 1),
                right_phase: phases(prec, next, qmax + 1),
            });
        }
    }
    Component { coefficient, gaps, on_arc }
}

/// `a_q(r) = ∫ (v(re^{iθ}) - on-arc part) e^{iqθ} dθ` for `q ≤ qmax`.
fn off_arc_moments(prec: u32, grid: &QuadratureGrid, comps: &[Component], r: f64, qmax: usize) -> Vec<Mpc> {
    let s = 1.0 - r;
    let mut out = vec![Mpc::zero(prec); qmax + 1];
    let mut acc = vec![Mpc::zero(prec); qmax + 1];
    let mut w = Float::new(prec);
    let mut t = Float::new(prec);
    let mut z = Mpc::zero(prec);
    for comp in comps {
        for gap in &comp.gaps {
            for a in acc.iter_mut() {
                set_f64(&mut a.re, 0.0);
                set_f64(&mut a.im, 0.0);
            }
            for (phi, weight) in grid.gap_rule(s, gap.half) {
                let v = comp.coefficient * weight * (-2.0 * (phi / 2.0).sin() / s).exp();
                if v == 0.0 {
                    continue;
                }
                set_f64(&mut w, v);
                let mut u = Mpc::from_c64(prec, Complex64::new(phi.cos(), phi.sin()));
                u.normalize();
                acc[0].re += &w;
                set_f64(&mut z.re, 1.0);
                set_f64(&mut z.im, 0.0);
                for a in acc.iter_mut().skip(1) {
                    // z ← z·u
                    rug::Assign::assign(&mut t, &z.re * &u.re);
                    t -= &z.im * &u.im;
                    z.im *= &u.re;
                    z.im += &z.re * &u.im;
                    std::mem::swap(&mut z.re, &mut t);
                    a.re += &w * &z.re;
                    a.im += &w * &z.im;
                }
            }
            // The half starting at the right endpoint runs backwards, which
            // conjugates the node phases.
            for (q, a) in acc.iter().enumerate() {
                out[q].add_mul(&gap.left_phase[q], a);
                out[q].add_mul(&gap.right_phase[q], &a.conj());
            }
        }
    }
    out
}

/// Moments `μ(p, q) = ∫_D r^p e^{iqθ} v dA` for `q ≤ p ≤ pmax`, `p ≡ q mod 2`.
struct Moments {
    pmax: usize,
    data: Vec<Vec<Mpc>>,
}

impl Moments {
    fn get(&self, p: usize, q: usize) -> &Mpc {
        &self.data[p][q]
    }
}

fn moments(weight: &Weight, grid: &QuadratureGrid, pmax: usize, prec: u32) -> Moments {
    let qmax = pmax;
    let pi = pi(prec);
    let mut data: Vec<Vec<Mpc>> = (0..=pmax).map(|p| vec![Mpc::zero(prec); p + 1]).collect();
    let mut comps: Vec<Component> = weight.components.iter().map(|(a, arcs)| component(prec, *a, arcs, qmax)).collect();
    if weight.constant > 0.0 {
        // A constant is the full-circle arc set.
        comps.push(component(prec, weight.constant, &[super::Arc::new(0.0, PI)], qmax));
    }
    // On-arc parts: ∫_0^1 r^{p+1} dr / π = 1/(π(p+2)).
    for (p, row) in data.iter_mut().enumerate() {
        let denom = Float::with_val(prec, &pi * (p as u32 + 2));
        for comp in &comps {
            let c = Float::with_val(prec, comp.coefficient) / &denom;
            for q in (p % 2..=p).step_by(2) {
                row[q].add_scaled(&c, &comp.on_arc[q]);
            }
        }
    }
    if comps.iter().all(|c| c.gaps.is_empty()) {
        return Moments { pmax, data };
    }
    let per_node: Vec<Vec<Mpc>> = grid
        .radial
        .par_iter()
        .map(|&(r, _)| off_arc_moments(prec, grid, &comps, r, qmax))
        .collect();
    let mut rp = Float::new(prec);
    let mut c = Float::new(prec);
    for (&(r, wr), a) in grid.radial.iter().zip(&per_node) {
        let fr = Float::with_val(prec, r);
        set_f64(&mut rp, wr);
        rp /= &pi;
        rp *= &fr; // ω r^{p+1} / π at p = 0
        for (p, row) in data.iter_mut().enumerate() {
            for q in (p % 2..=p).step_by(2) {
                rug::Assign::assign(&mut c, &rp);
                row[q].add_scaled(&c, &a[q]);
            }
            rp *= &fr;
        }
    }
    Moments { pmax, data }
}

/// `G[j][k] = Σ_{m ≤ n} ⟨(z^j)^{(m)}, (z^k)^{(m)}⟩_v` for `j, k ≤ N`, together with an
/// orthonormal basis of `P_N` obtained by modified Gram–Schmidt on the monomials.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub degree_cap: usize,
    pub derivative_order: u32,
    pub digits: u32,
    pub hermitian: bool,
    /// `log10(max_j G[j][j] / min_k p_k)` with `p_k` the Gram–Schmidt pivots.
    pub log10_condition: f64,
    /// Sup-norm bound on the part of the weight left out by truncation.
    pub truncation_bound: f64,
    pub(crate) prec: u32,
    pub(crate) entries: Vec<Vec<Mpc>>,
    /// `basis[k]` holds the coefficients of `φ_k`, nonzero up to degree `k`.
    pub(crate) basis: Vec<Vec<Mpc>>,
    /// `h[k] = G·conj(φ_k)`, so that `⟨F, φ_k⟩ = Σ_j F_j h[k][j]`.
    pub(crate) h: Vec<Vec<Mpc>>,
    pub(crate) pivots: Vec<Float>,
}

fn falling(j: usize, m: usize) -> u64 {
    ((j - m + 1)..=j).map(|x| x as u64).product()
}

/// Assemble the Gram matrix of `1, z, …, z^N` and orthonormalize.
pub fn gram_matrix(space: &WeightedSpace, degree_cap: usize, grid: &QuadratureGrid) -> Result<GramMatrix> {
    let weight = space.weight.resolve()?;
    if grid.degree_cap < degree_cap {
        return Err(Error::InvalidInput(format!(
            "quadrature grid built for degree {} cannot resolve degree {degree_cap}",
            grid.degree_cap
        )));
    }
    let prec = precision_bits(grid.digits);
    let n = space.n as usize;
    let mu = moments(&weight, grid, 2 * degree_cap, prec);
    debug_assert_eq!(mu.pmax, 2 * degree_cap);
    let size = degree_cap + 1;
    let mut entries = vec![vec![Mpc::zero(prec); size]; size];
    for j in 0..size {
        for k in 0..=j {
            let mut e = Mpc::zero(prec);
            for m in 0..=n.min(k) {
                let c = Float::with_val(prec, falling(j, m)) * falling(k, m);
                e.add_scaled(&c, mu.get(j + k - 2 * m, j - k));
            }
            if j == k {
                set_f64(&mut e.im, 0.0);
            }
            entries[k][j] = e.conj();
            entries[j][k] = e;
        }
    }
    let mut g = GramMatrix {
        degree_cap,
        derivative_order: space.n,
        digits: grid.digits,
        hermitian: true,
        log10_condition: 0.0,
        truncation_bound: weight.truncation_bound,
        prec,
        entries,
        basis: Vec::new(),
        h: Vec::new(),
        pivots: Vec::new(),
    };
    g.orthonormalize()?;
    let budget = grid.digits as f64 - 8.0;
    if g.log10_condition > budget {
        return Err(Error::PrecisionLoss { log10_condition: g.log10_condition, log10_budget: budget });
    }
    Ok(g)
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.degree_cap + 1
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j][k].to_c64()
    }

    /// Decimal rendering of an entry with `digits` significant digits.
    pub fn entry_decimal(&self, j: usize, k: usize, digits: usize) -> (String, String) {
        let e = &self.entries[j][k];
        (e.re.to_string_radix(10, Some(digits)), e.im.to_string_radix(10, Some(digits)))
    }

    /// `log10` of the condition estimate restricted to `P_N`.
    pub fn log10_condition_at(&self, n: usize) -> f64 {
        let max_diag = (0..=n).map(|j| self.entries[j][j].re.to_f64()).fold(0.0, f64::max);
        let min_pivot = self.pivots[..=n].iter().map(|p| p.to_f64()).fold(f64::INFINITY, f64::min);
        (max_diag / min_pivot).log10()
    }

    /// `Σ_j u_j h_j` for coefficient vectors of equal length.
    fn pair(&self, u: &[Mpc], h: &[Mpc]) -> Mpc {
        let mut acc = Mpc::zero(self.prec);
        for (a, b) in u.iter().zip(h) {
            acc.add_mul(a, b);
        }
        acc
    }

    /// `G·conj(v)` for `v` supported on degrees `≤ top`.
    fn gram_conj(&self, v: &[Mpc], top: usize) -> Vec<Mpc> {
        (0..self.size())
            .map(|j| {
                let mut acc = Mpc::zero(self.prec);
                for (l, vl) in v.iter().enumerate().take(top + 1) {
                    acc.add_mul_conj(&self.entries[j][l], vl);
                }
                acc
            })
            .collect()
    }

    fn orthonormalize(&mut self) -> Result<()> {
        let size = self.size();
        for k in 0..size {
            let mut v = vec![Mpc::zero(self.prec); size];
            set_f64(&mut v[k].re, 1.0);
            for _pass in 0..2 {
                for i in 0..k {
                    let c = self.pair(&v[..=k], &self.h[i][..=k]);
                    for (vj, pj) in v.iter_mut().zip(&self.basis[i]).take(i + 1) {
                        vj.sub_mul(&c, pj);
                    }
                }
            }
            let hv = self.gram_conj(&v, k);
            let norm = self.pair(&v[..=k], &hv[..=k]).re;
            if !(norm.is_finite() && norm > 0) {
                return Err(Error::PrecisionLoss { log10_condition: f64::INFINITY, log10_budget: self.digits as f64 - 8.0 });
            }
            let root = Float::with_val(self.prec, norm.sqrt_ref());
            let inv = Float::with_val(self.prec, 1u32) / &root;
            for x in v.iter_mut().take(k + 1) {
                x.re *= &inv;
                x.im *= &inv;
            }
            let h = hv.iter().map(|x| x.scale(&inv)).collect();
            self.basis.push(v);
            self.h.push(h);
            self.pivots.push(norm);
        }
        self.log10_condition = self.log10_condition_at(size - 1);
        Ok(())
    }

    /// `φ_k(w)` for `k ≤ N`.
    pub(crate) fn basis_values(&self, w: Complex64, n: usize) -> Vec<Mpc> {
        let wm = Mpc::from_c64(self.prec, w);
        let mut powers = Vec::with_capacity(n + 1);
        let mut z = Mpc::real(Float::with_val(self.prec, 1));
        for _ in 0..=n {
            let next = z.mul(&wm);
            powers.push(std::mem::replace(&mut z, next));
        }
        (0..=n).map(|k| self.pair(&self.basis[k][..=k], &powers[..=k])).collect()
    }

    /// `⟨F, K_w⟩` with `K_w = Σ_{k ≤ N} conj(φ_k(w)) φ_k`, for `deg F ≤ N`.
    pub fn truncated_functional(&self, w: Complex64, n: usize, coeffs: &[Complex64]) -> Result<Complex64> {
        if n > self.degree_cap || coeffs.len() > n + 1 {
            return Err(Error::InvalidInput("degree exceeds the truncation".into()));
        }
        let f: Vec<Mpc> = coeffs.iter().map(|c| Mpc::from_c64(self.prec, *c)).collect();
        let vals = self.basis_values(w, n);
        let mut acc = Mpc::zero(self.prec);
        for (k, val) in vals.iter().enumerate() {
            let inner = self.pair(&f, &self.h[k][..f.len()]);
            acc.add_mul(val, &inner);
        }
        Ok(acc.to_c64())
    }

    /// Cholesky factorization check in working precision.
    pub fn is_positive_definite(&self) -> bool {
        self.pivots.iter().all(|p| *p > 0)
    }

    /// The f64 rounding of the full matrix, row-major.
    pub fn to_f64(&self) -> Vec<Vec<Complex64>> {
        self.entries.iter().map(|row| row.iter().map(Mpc::to_c64).collect()).collect()
    }
}
