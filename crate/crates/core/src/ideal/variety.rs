//! Points of a zero-dimensional variety from the eigenstructure of the
//! multiplication operators on `P_d / I`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::groebner::GroebnerBasis;
use super::quotient::{codimension, eliminant, multiplication_matrix};
use crate::error::{Error, Result};
use crate::poly::{locate_roots, CirclePosition, ExponentVector, GaussianRational, MultiPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Largest accepted `max_g |g(w)|` over the basis generators.
    pub tolerance: f64,
    /// Seed for the random linear combination of multiplication operators.
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { tolerance: 1e-9, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarietyPoint {
    pub coords: Vec<Complex64>,
    /// Eigenvalue cluster size.
    pub multiplicity: usize,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VarietySolution {
    pub points: Vec<VarietyPoint>,
    pub tolerance: f64,
}

impl VarietySolution {
    pub fn count_with_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }
}

fn to_complex_matrix(m: &[Vec<GaussianRational>]) -> DMatrix<Complex64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |r, c| m[r][c].to_complex64())
}

pub(crate) fn residual(gens: &[MultiPolynomial], w: &[Complex64]) -> f64 {
    gens.iter().map(|g| g.eval_unchecked(w).norm()).fold(0.0, f64::max)
}

/// Gauss–Newton refinement of `w` against the exact generators.
fn polish(gens: &[MultiPolynomial], jac: &[Vec<MultiPolynomial>], w: &mut [Complex64]) {
    let d = w.len();
    let mut best = residual(gens, w);
    for _ in 0..30 {
        let f = DVector::from_iterator(gens.len(), gens.iter().map(|g| g.eval_unchecked(w)));
        let j = DMatrix::from_fn(gens.len(), d, |r, c| jac[r][c].eval_unchecked(w));
        let Ok(step) = j.svd(true, true).solve(&f, 1e-14) else { break };
        let trial: Vec<Complex64> = w.iter().zip(step.iter()).map(|(a, s)| a - s).collect();
        let r = residual(gens, &trial);
        if !(r < best) {
            break;
        }
        w.copy_from_slice(&trial);
        best = r;
        if step.norm() <= 1e-16 * (1.0 + w.iter().map(|x| x.norm()).fold(0.0, f64::max)) {
            break;
        }
    }
}

/// Points of `V(I)` for a zero-dimensional ideal given by its reduced basis.
pub fn solve_variety(g: &GroebnerBasis, opts: &SolveOptions) -> Result<VarietySolution> {
    let basis = codimension(g).monomials()?;
    let n = basis.len();
    let dim = g.dim();
    if n == 0 {
        return Ok(VarietySolution { points: vec![], tolerance: opts.tolerance });
    }
    let mats: Vec<DMatrix<Complex64>> = (0..dim)
        .map(|v| multiplication_matrix(g, &basis, v).map(|m| to_complex_matrix(&m)))
        .collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut l = DMatrix::<Complex64>::zeros(n, n);
    for m in &mats {
        let c = Complex64::new(rng.gen_range(0.5..1.5), rng.gen_range(-1.0..1.0));
        l += m * c;
    }
    let schur = nalgebra::linalg::Schur::try_new(l, 1e-15, 10_000)
        .ok_or_else(|| Error::IllConditioned("Schur iteration did not converge".into()))?;
    let (q, t) = schur.unpack();
    let qh = q.adjoint();
    let diag: Vec<Vec<Complex64>> = mats
        .iter()
        .map(|m| {
            let r = &qh * m * &q;
            (0..n).map(|k| r[(k, k)]).collect()
        })
        .collect();

    // Group eigenvalues of the generic combination; a cluster of size m is a
    // point of multiplicity m.
    let eig: Vec<Complex64> = (0..n).map(|k| t[(k, k)]).collect();
    let scale = 1.0 + eig.iter().map(|e| e.norm()).fold(0.0, f64::max);
    let mut cluster: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], k: usize) -> usize {
        let mut r = k;
        while c[r] != r {
            r = c[r];
        }
        c[k] = r;
        r
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if (eig[a] - eig[b]).norm() < 1e-6 * scale {
                let (ra, rb) = (find(&mut cluster, a), find(&mut cluster, b));
                cluster[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        let r = find(&mut cluster, k);
        match groups.iter_mut().find(|gr| find(&mut cluster, gr[0]) == r) {
            Some(gr) => gr.push(k),
            None => groups.push(vec![k]),
        }
    }

    let gens = g.generators();
    let jac: Vec<Vec<MultiPolynomial>> = gens
        .iter()
        .map(|p| (0..dim).map(|v| p.derivative(v, 1).expect("in range")).collect())
        .collect();
    let mut points = Vec::with_capacity(groups.len());
    for grp in groups {
        let m = grp.len() as f64;
        let mut w: Vec<Complex64> = (0..dim).map(|v| grp.iter().map(|&k| diag[v][k]).sum::<Complex64>() / m).collect();
        polish(gens, &jac, &mut w);
        let res = residual(gens, &w);
        if !(res < opts.tolerance) {
            return Err(Error::IllConditioned(format!(
                "variety point residual {res:.3e} exceeds tolerance {:.1e}",
                opts.tolerance
            )));
        }
        points.push(VarietyPoint { coords: w, multiplicity: grp.len(), residual: res });
    }
    points.sort_by(|a, b| {
        a.coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(VarietySolution { points, tolerance: opts.tolerance })
}

/// Exact position of every coordinate of every solution point relative to
/// the unit circle, by matching it to the located roots of the eliminant.
pub fn circle_positions(g: &GroebnerBasis, sol: &VarietySolution) -> Result<Vec<Vec<CirclePosition>>> {
    let basis: Vec<ExponentVector> = codimension(g).monomials()?;
    let per_var: Vec<_> = (0..g.dim())
        .map(|v| eliminant(g, &basis, v).map(|e| locate_roots(&e)))
        .collect::<Result<_>>()?;
    Ok(sol
        .points
        .iter()
        .map(|p| {
            p.coords
                .iter()
                .zip(&per_var)
                .map(|(x, roots)| {
                    roots
                        .iter()
                        .min_by(|a, b| (a.value - x).norm().total_cmp(&(b.value - x).norm()))
                        .map_or(CirclePosition::Uncertain, |r| {
                            if (r.value - x).norm() < 1e-6 * (1.0 + x.norm()) {
                                r.position
                            } else {
                                CirclePosition::Uncertain
                            }
                        })
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{buchberger, codimension};
    use crate::poly::{parse, TermOrder};

    fn solve(v: &[&str], d: usize) -> (GroebnerBasis, VarietySolution) {
        let ps: Vec<_> = v.iter().map(|s| parse(s, d).unwrap()).collect();
        let g = buchberger(&ps, &TermOrder::grlex(d)).unwrap();
        let s = solve_variety(&g, &SolveOptions::default()).unwrap();
        (g, s)
    }

    fn close(a: &[Complex64], b: &[(f64, f64)]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - Complex64::new(y.0, y.1)).norm() < 1e-10)
    }

    #[test]
    fn two_real_points() {
        let (_, s) = solve(&["z1^2-1", "z2-z1"], 2);
        assert_eq!(s.points.len(), 2);
        assert!(close(&s.points[0].coords, &[(-1.0, 0.0), (-1.0, 0.0)]));
        assert!(close(&s.points[1].coords, &[(1.0, 0.0), (1.0, 0.0)]));
    }

    #[test]
    fn maximal_ideal_point() {
        let (g, s) = solve(&["z1 - 1/2", "z2 - i"], 2);
        assert_eq!(s.points.len(), 1);
        assert!(close(&s.points[0].coords, &[(0.5, 0.0), (0.0, 1.0)]));
        let pos = circle_positions(&g, &s).unwrap();
        assert_eq!(pos, vec![vec![CirclePosition::Inside, CirclePosition::OnCircle]]);
    }

    #[test]
    fn multiplicity_from_clusters() {
        let (g, s) = solve(&["z1^2", "z2 - 1"], 2);
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].multiplicity, 2);
        assert_eq!(s.count_with_multiplicity(), codimension(&g).count().unwrap());
    }

    #[test]
    fn complex_intersection() {
        let (g, s) = solve(&["z1^2 + z2^2 - 2", "z1*z2 - 1", "z1^3 - z2"], 2);
        assert!(s.count_with_multiplicity() <= codimension(&g).count().unwrap());
        assert!(s.max_residual() < 1e-9);
    }

    #[test]
    fn infinite_variety_is_rejected() {
        let g = buchberger(&[parse("z1*z2", 2).unwrap()], &TermOrder::grlex(2)).unwrap();
        assert_eq!(solve_variety(&g, &SolveOptions::default()), Err(Error::InfiniteCodimension));
    }
}
