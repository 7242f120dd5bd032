mod common;

use cyclic_core::ideal::{buchberger, codimension, factor_ideal, normal_form, solve_variety, SolveOptions};
use cyclic_core::poly::{divide_exact, OrderKind, TermOrder};
use cyclic_core::{parse, GaussianRational, MultiPolynomial};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(s: &str, d: usize) -> MultiPolynomial {
    parse(s, d).unwrap()
}

fn family(seed: u64, size: usize, deg: u32) -> Vec<MultiPolynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size).map(|_| common::random_poly(&mut rng, 2, deg, 4)).collect()
}

#[test]
fn canonical_form_round_trips_through_text() {
    for seed in 0..50 {
        for f in family(seed, 2, 4) {
            let back = MultiPolynomial::from_canonical(2, &f.to_canonical()).unwrap();
            assert_eq!(back, f);
            assert_eq!(parse(&f.to_string(), 2).unwrap(), f, "display of {f:?}");
        }
    }
}

#[test]
fn exact_division_and_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..40 {
        let f = family(seed, 2, 3);
        let prod = &f[0] * &f[1];
        assert_eq!(divide_exact(&prod, &f[1]).unwrap(), f[0]);
        let w = [common::random_gaussian(&mut rng, 5), common::random_gaussian(&mut rng, 5)];
        let lhs = prod.evaluate_exact(&w).unwrap();
        let rhs = &f[0].evaluate_exact(&w).unwrap() * &f[1].evaluate_exact(&w).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn variety_examples() {
    let order = TermOrder::grevlex(2);
    let g = buchberger(&[p("z1^2 - 1", 2), p("z2 - z1", 2)], &order).unwrap();
    let sol = solve_variety(&g, &SolveOptions::default()).unwrap();
    let mut pts: Vec<Complex64> = sol.points.iter().map(|q| q.coords[0]).collect();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re));
    assert_eq!(pts.len(), 2);
    assert!((pts[0] + 1.0).norm() < 1e-12 && (pts[1] - 1.0).norm() < 1e-12);
    for q in &sol.points {
        assert!((q.coords[0] - q.coords[1]).norm() < 1e-12);
    }
    let g = buchberger(&[p("z1 - 1/2", 2), p("z2 - i", 2)], &order).unwrap();
    let sol = solve_variety(&g, &SolveOptions::default()).unwrap();
    assert_eq!(sol.points.len(), 1);
    assert!((sol.points[0].coords[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
}

#[test]
fn factorization_multiplies_back() {
    let f = [p("(z1 - z2)*(1 - z1*z2)", 2), p("(z1 - z2)*z1", 2)];
    let fac = factor_ideal(&f).unwrap();
    assert_eq!(fac.g, p("z1 - z2", 2));
    for (orig, co) in f.iter().zip(&fac.cofactors) {
        assert_eq!(&(&fac.g * co), orig);
    }
}

#[test]
fn normal_form_examples() {
    let g = buchberger(&[p("z1 - 1", 2), p("z2 - 1", 2)], &TermOrder::lex(2)).unwrap();
    assert_eq!(normal_form(&p("z1^2", 2), &g).unwrap(), MultiPolynomial::one(2));
    assert_eq!(normal_form(&MultiPolynomial::one(2), &g).unwrap(), MultiPolynomial::one(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn codimension_agrees_across_orders(seed in 0u64..10_000) {
        let f = family(seed, 2, 2);
        let counts: Vec<Option<usize>> = [OrderKind::Lex, OrderKind::GradedLex, OrderKind::GradedReverseLex]
            .into_iter()
            .map(|k| {
                let g = buchberger(&f, &TermOrder::new(k, 2)).unwrap();
                prop_assert!(g.verify());
                Ok(codimension(&g).count())
            })
            .collect::<Result<_, _>>()?;
        prop_assert!(counts.windows(2).all(|w| w[0] == w[1]), "{:?}", counts);
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(seed in 0u64..10_000, re in -5i64..5, im in -5i64..5) {
        let f = family(seed, 3, 2);
        let g = buchberger(&f[..2], &TermOrder::grlex(2)).unwrap();
        let c = GaussianRational::from_parts((re, 1), (im, 1));
        let x = &f[2] + &f[0].scale(&c);
        let nx = normal_form(&x, &g).unwrap();
        prop_assert_eq!(normal_form(&nx, &g).unwrap(), nx.clone());
        prop_assert_eq!(nx, normal_form(&f[2], &g).unwrap());
    }
}
