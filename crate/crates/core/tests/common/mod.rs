#![allow(dead_code)]

use std::f64::consts::PI;

use prony_core::linalg::poly_from_roots;
use prony_core::{Complex64, RationalFilter};
use rand::Rng;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Real-coefficient poles: conjugate pairs plus one real pole for odd order,
/// all with modulus in `[min_radius, max_radius]`.
pub fn random_real_poles(rng: &mut impl Rng, order: usize, min_radius: f64, max_radius: f64) -> Vec<Complex64> {
    let mut poles = Vec::with_capacity(order);
    while poles.len() + 1 < order {
        let p = Complex64::from_polar(rng.gen_range(min_radius..max_radius), rng.gen_range(0.1..PI - 0.1));
        poles.push(p);
        poles.push(p.conj());
    }
    if poles.len() < order {
        let r = rng.gen_range(min_radius..max_radius);
        poles.push(c(if rng.gen_bool(0.5) { r } else { -r }));
    }
    poles
}

/// Monic denominator with real coefficients (imaginary round-off removed).
pub fn denominator_from_poles(poles: &[Complex64]) -> Vec<Complex64> {
    poly_from_roots(poles).into_iter().map(|z| c(z.re)).collect()
}

pub fn random_stable_filter(rng: &mut impl Rng, num_order: usize, den_order: usize, max_radius: f64) -> RationalFilter {
    let a = denominator_from_poles(&random_real_poles(rng, den_order, 0.1, max_radius));
    let mut b: Vec<Complex64> = (0..=num_order).map(|_| c(rng.gen_range(-1.0..1.0))).collect();
    if b[0].norm() < 0.1 {
        b[0] = c(0.5);
    }
    RationalFilter::new(b, a).unwrap()
}

pub fn max_abs_diff(x: &[Complex64], y: &[Complex64]) -> f64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

pub fn max_abs(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Unit-norm random complex direction.
pub fn random_direction(rng: &mut impl Rng, len: usize, complex: bool) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..len)
        .map(|_| {
            Complex64::new(
                rng.gen_range(-1.0..1.0),
                if complex { rng.gen_range(-1.0..1.0) } else { 0.0 },
            )
        })
        .collect();
    let n = prony_core::linalg::norm2(&v);
    v.into_iter().map(|z| z / n).collect()
}

/// Pairs each reference value with its nearest unused candidate and returns
/// the worst distance.
pub fn paired_distance(reference: &[Complex64], candidates: &[Complex64]) -> f64 {
    assert_eq!(reference.len(), candidates.len());
    let mut left: Vec<Complex64> = candidates.to_vec();
    let mut worst = 0.0_f64;
    for r in reference {
        let (i, d) = left
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (z - r).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        worst = worst.max(d);
        left.remove(i);
    }
    worst
}
