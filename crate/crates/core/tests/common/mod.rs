//! Shared helpers for the integration and acceptance tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use cyclic_core::lab::Weight;
use cyclic_core::{GaussianRational, MultiPolynomial};
use num_complex::Complex64;
use rand::Rng;
use rug::Float;

/// Gram matrix of `1, …, z^N` in `H_{v,n}` by brute force in f64.
///
/// Radial variable `r = 1 - e^{-u}` with composite Simpson in `u ∈ [0, 40]`,
/// uniform periodic trapezoid in `θ` with `m` points. Only pointwise
/// evaluations of the weight are used.
pub fn oracle_gram(weight: &Weight, n: u32, cap: usize, m: usize) -> Vec<Vec<Complex64>> {
    let pmax = 2 * cap;
    let h = 0.02;
    let steps = 2000;
    let mut mu = vec![vec![Complex64::new(0.0, 0.0); cap + 1]; pmax + 1];
    let phases: Vec<Complex64> = (0..m).map(|t| Complex64::from_polar(1.0, -PI + 2.0 * PI * t as f64 / m as f64)).collect();
    let mut a = vec![Complex64::new(0.0, 0.0); cap + 1];
    for i in 0..=steps {
        let u = i as f64 * h;
        let simpson = if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let dr = simpson * h / 3.0 * (-u).exp();
        let r = -(-u).exp_m1();
        if r == 0.0 {
            continue;
        }
        a.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        for ph in &phases {
            let v = weight.eval(ph * r) * 2.0 * PI / m as f64;
            let mut z = Complex64::new(v, 0.0);
            for x in a.iter_mut() {
                *x += z;
                z *= ph;
            }
        }
        let mut rp = dr * r / PI;
        for row in mu.iter_mut() {
            for (q, x) in row.iter_mut().enumerate() {
                *x += a[q] * rp;
            }
            rp *= r;
        }
    }
    let falling = |j: usize, k: usize| -> f64 { ((j - k + 1)..=j).map(|x| x as f64).product() };
    let mut g = vec![vec![Complex64::new(0.0, 0.0); cap + 1]; cap + 1];
    for j in 0..=cap {
        for k in 0..=j {
            let mut e = Complex64::new(0.0, 0.0);
            for s in 0..=(n as usize).min(k) {
                e += mu[j + k - 2 * s][j - k] * falling(j, s) * falling(k, s);
            }
            g[j][k] = e;
            g[k][j] = e.conj();
        }
    }
    g
}

#[derive(Clone)]
struct C {
    re: Float,
    im: Float,
}

/// `e^H G^{-1} e` with `e = (1, w, …, w^N)`, by Gaussian elimination with
/// partial pivoting at `bits` of precision on the exact f64 entries.
pub fn oracle_lambda(g: &[Vec<Complex64>], w: Complex64, cap: usize, bits: u32) -> f64 {
    let n = cap + 1;
    let c = |z: Complex64| C { re: Float::with_val(bits, z.re), im: Float::with_val(bits, z.im) };
    let mut a: Vec<Vec<C>> = (0..n).map(|j| (0..n).map(|k| c(g[j][k])).collect()).collect();
    let mut e: Vec<C> = Vec::with_capacity(n);
    let mut p = C { re: Float::with_val(bits, 1), im: Float::with_val(bits, 0) };
    let wc = c(w);
    for _ in 0..n {
        e.push(p.clone());
        let re = Float::with_val(bits, &p.re * &wc.re) - Float::with_val(bits, &p.im * &wc.im);
        let im = Float::with_val(bits, &p.re * &wc.im) + Float::with_val(bits, &p.im * &wc.re);
        p = C { re, im };
    }
    let mut b = e.clone();
    let mul = |x: &C, y: &C| C {
        re: Float::with_val(bits, &x.re * &y.re) - Float::with_val(bits, &x.im * &y.im),
        im: Float::with_val(bits, &x.re * &y.im) + Float::with_val(bits, &x.im * &y.re),
    };
    let div = |x: &C, y: &C| {
        let d = Float::with_val(bits, &y.re * &y.re) + Float::with_val(bits, &y.im * &y.im);
        let yc = C { re: y.re.clone() / &d, im: Float::with_val(bits, -&y.im) / &d };
        mul(x, &yc)
    };
    let abs2 = |x: &C| Float::with_val(bits, &x.re * &x.re) + Float::with_val(bits, &x.im * &x.im);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| abs2(&a[i][col]).partial_cmp(&abs2(&a[j][col])).unwrap()).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = div(&a[row][col], &a[col][col]);
            for k in col..n {
                let t = mul(&f, &a[col][k]);
                a[row][k].re -= &t.re;
                a[row][k].im -= &t.im;
            }
            let t = mul(&f, &b[col]);
            b[row].re -= &t.re;
            b[row].im -= &t.im;
        }
    }
    let mut x = vec![C { re: Float::new(bits), im: Float::new(bits) }; n];
    for row in (0..n).rev() {
        let mut s = b[row].clone();
        for k in row + 1..n {
            let t = mul(&a[row][k], &x[k]);
            s.re -= &t.re;
            s.im -= &t.im;
        }
        x[row] = div(&s, &a[row][row]);
    }
    // e^H x
    let mut total = Float::new(bits);
    for (ei, xi) in e.iter().zip(&x) {
        total += Float::with_val(bits, &ei.re * &xi.re) + Float::with_val(bits, &ei.im * &xi.im);
    }
    total.to_f64()
}

pub fn random_gaussian(rng: &mut impl Rng, range: i64) -> GaussianRational {
    GaussianRational::from_parts((rng.gen_range(-range..=range), rng.gen_range(1..=3)), (rng.gen_range(-range..=range), 1))
}

pub fn random_nonzero(rng: &mut impl Rng, range: i64) -> GaussianRational {
    loop {
        let c = random_gaussian(rng, range);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random nonzero polynomial in `dim` variables of total degree at most `deg`.
pub fn random_poly(rng: &mut impl Rng, dim: usize, deg: u32, terms: usize) -> MultiPolynomial {
    loop {
        let ts: Vec<(Vec<u32>, GaussianRational)> = (0..terms)
            .map(|_| {
                let mut e = vec![0u32; dim];
                let mut budget = rng.gen_range(0..=deg);
                for slot in e.iter_mut() {
                    let x = rng.gen_range(0..=budget);
                    *slot = x;
                    budget -= x;
                }
                (e, random_gaussian(rng, 4))
            })
            .collect();
        let p = MultiPolynomial::from_terms(dim, ts).expect("dimension matches");
        if !p.is_zero() {
            return p;
        }
    }
}
