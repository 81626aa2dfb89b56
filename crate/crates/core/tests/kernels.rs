mod common;

use std::f64::consts::PI;

use common::{c, max_abs_diff};
use prony_core::linalg::{norm2, poly_eval};
use prony_core::{dft, idft, lstsq, poly_roots, Complex64, Mat};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

fn direct_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len() as f64;
    (0..x.len())
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(m, v)| v * Complex64::from_polar(1.0, -2.0 * PI * (m * k) as f64 / n))
                .sum()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn idft_inverts_dft((len, x) in (1usize..=64).prop_flat_map(|n| (Just(n), complex_vec(n)))) {
        let back = idft(&dft(&x).unwrap()).unwrap();
        prop_assert_eq!(back.len(), len);
        prop_assert!(max_abs_diff(&back, &x) <= 1e-12);
    }

    #[test]
    fn dft_matches_direct_sum(x in (1usize..=64).prop_flat_map(complex_vec)) {
        prop_assert!(max_abs_diff(&dft(&x).unwrap(), &direct_dft(&x)) <= 1e-12);
    }

    #[test]
    fn conjugate_symmetric_input_has_real_dft(x in (1usize..=64).prop_flat_map(complex_vec)) {
        let n = x.len();
        let sym: Vec<Complex64> = (0..n).map(|k| (x[k] + x[(n - k) % n].conj()) * 0.5).collect();
        let out = dft(&sym).unwrap();
        let scale = out.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(out.iter().all(|z| z.im.abs() <= 1e-12 * scale));
    }

    #[test]
    fn lstsq_residual_is_orthogonal(
        (rows, cols, seed) in (1usize..12, 1usize..8, any::<u64>())
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::from_fn(rows, cols, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let y: Vec<Complex64> = (0..rows).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let r = lstsq(&a, &y).unwrap();
        prop_assert!(r.rank <= rows.min(cols));
        prop_assert!(r.residual_norm >= 0.0);
        let ax = a.mul_vec(&r.solution).unwrap();
        let res: Vec<Complex64> = ax.iter().zip(&y).map(|(p, q)| p - q).collect();
        let g = a.adjoint().mul_vec(&res).unwrap();
        prop_assert!(norm2(&g) <= 1e-9 * a.norm() * norm2(&y));
    }

    #[test]
    fn real_polynomial_roots_close_under_conjugation(
        coeffs in prop::collection::vec(-1.0f64..1.0, 2..=11)
    ) {
        prop_assume!(coeffs[0].abs() > 1e-3);
        let poly: Vec<Complex64> = coeffs.iter().map(|&v| c(v)).collect();
        let roots = poly_roots(&poly).unwrap();
        let conj: Vec<Complex64> = roots.iter().map(|z| z.conj()).collect();
        prop_assert!(common::paired_distance(&roots, &conj) <= 1e-8 * roots.iter().map(|z| z.norm()).fold(1.0, f64::max));
    }
}

#[test]
fn lstsq_rank_deficient_solution_has_minimum_norm() {
    // rank-2 matrix: third column is the sum of the first two
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let a = Mat::from_fn(6, 3, |_, _| c(0.0));
    let mut a = a;
    for i in 0..6 {
        let (p, q) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        a[(i, 0)] = c(p);
        a[(i, 1)] = c(q);
        a[(i, 2)] = c(p + q);
    }
    let y: Vec<Complex64> = (0..6).map(|_| c(rng.gen_range(-1.0..1.0))).collect();
    let r = lstsq(&a, &y).unwrap();
    assert_eq!(r.rank, 2);
    // null space is (1, 1, -1); the minimum-norm solution is orthogonal to it
    let null_component = r.solution[0] + r.solution[1] - r.solution[2];
    assert!(null_component.norm() < 1e-10, "{null_component}");
}

#[test]
fn root_residual_bound_on_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let degree = rng.gen_range(1..=10);
        let poly: Vec<Complex64> = (0..=degree)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let scale = poly.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let roots = poly_roots(&poly).unwrap();
        assert_eq!(roots.len(), degree);
        for r in roots {
            let bound = 1e-8 * scale * r.norm().max(1.0).powi(degree as i32);
            assert!(poly_eval(&poly, r).norm() <= bound);
        }
    }
}
