//! Rational transfer functions `H(z) = B(z) / A(z)` in powers of `z⁻¹`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::poly_roots;

/// `|A(e^{-jω})|` below this is treated as a pole on the unit circle.
pub const ON_CIRCLE_TOLERANCE: f64 = 1e-14;

/// Numerator `b` (length M+1) over denominator `a` (length N+1, `a[0] = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFilter {
    b: Vec<Complex64>,
    a: Vec<Complex64>,
}

impl RationalFilter {
    pub fn new(b: Vec<Complex64>, a: Vec<Complex64>) -> Result<Self> {
        if b.is_empty() || a.is_empty() {
            return Err(Error::InvalidInput(
                "numerator and denominator need at least one coefficient".into(),
            ));
        }
        if a[0] != Complex64::new(1.0, 0.0) {
            return Err(Error::InvalidInput(format!(
                "denominator must be normalized to a[0] = 1, got {}",
                a[0]
            )));
        }
        if b.iter().chain(&a).any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite filter coefficient".into()));
        }
        Ok(Self { b, a })
    }

    pub fn from_real(b: &[f64], a: &[f64]) -> Result<Self> {
        Self::new(
            b.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            a.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn numerator_order(&self) -> usize {
        self.b.len() - 1
    }

    pub fn denominator_order(&self) -> usize {
        self.a.len() - 1
    }

    /// Roots of `zᴺ + a₁zᴺ⁻¹ + … + a_N`.
    pub fn poles(&self) -> Vec<Complex64> {
        if self.a.len() < 2 {
            return Vec::new();
        }
        // a[0] = 1 guarantees a nonzero leading coefficient
        poly_roots(&self.a).unwrap_or_default()
    }

    pub fn is_stable(&self) -> bool {
        self.poles().iter().all(|p| p.norm() < 1.0)
    }

    /// First `count` samples of the causal impulse response, from
    /// `h_i = b_i − Σ_{n=1..N} a_n h_{i−n}`.
    pub fn impulse_response(&self, count: usize) -> Vec<Complex64> {
        let mut h: Vec<Complex64> = Vec::with_capacity(count);
        for i in 0..count {
            let mut v = self.b.get(i).copied().unwrap_or_default();
            for (n, an) in self.a.iter().enumerate().skip(1).take(i) {
                v -= an * h[i - n];
            }
            h.push(v);
        }
        h
    }

    /// `H(ω) = Σ b_n e^{-jωn} / Σ a_n e^{-jωn}` at each requested frequency.
    pub fn frequency_response(&self, omegas: &[f64]) -> Result<Vec<Complex64>> {
        omegas
            .iter()
            .map(|&w| {
                let num = eval_in_inverse_powers(&self.b, w);
                let den = eval_in_inverse_powers(&self.a, w);
                if den.norm() < ON_CIRCLE_TOLERANCE {
                    return Err(Error::PoleOnCircle {
                        omega: w,
                        magnitude: den.norm(),
                    });
                }
                Ok(num / den)
            })
            .collect()
    }
}

fn eval_in_inverse_powers(coeffs: &[Complex64], omega: f64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::from_polar(1.0, -omega * n as f64))
        .sum()
}

/// Free-function form of [`RationalFilter::impulse_response`].
pub fn impulse_response(filter: &RationalFilter, count: usize) -> Vec<Complex64> {
    filter.impulse_response(count)
}

/// Free-function form of [`RationalFilter::frequency_response`].
pub fn frequency_response(filter: &RationalFilter, omegas: &[f64]) -> Result<Vec<Complex64>> {
    filter.frequency_response(omegas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dft;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Power-series division of B(z⁻¹) by A(z⁻¹), written independently of
    /// the recursion: q_i = (b_i − Σ_{k<i} q_k a_{i−k}) / a_0.
    fn long_division(b: &[Complex64], a: &[Complex64], count: usize) -> Vec<Complex64> {
        let mut rem: Vec<Complex64> = (0..count).map(|i| b.get(i).copied().unwrap_or_default()).collect();
        let mut q = vec![c(0.0); count];
        for i in 0..count {
            q[i] = rem[i] / a[0];
            for (k, ak) in a.iter().enumerate() {
                if i + k < count {
                    rem[i + k] -= q[i] * ak;
                }
            }
        }
        q
    }

    #[test]
    fn geometric_series() {
        let f = RationalFilter::from_real(&[1.0], &[1.0, -0.5]).unwrap();
        let h = f.impulse_response(5);
        for (i, v) in h.iter().enumerate() {
            assert!((v - c(0.5f64.powi(i as i32))).norm() < 1e-15);
        }
    }

    #[test]
    fn fir_response() {
        let f = RationalFilter::from_real(&[1.0, 2.0], &[1.0]).unwrap();
        assert_eq!(f.impulse_response(4), vec![c(1.0), c(2.0), c(0.0), c(0.0)]);
    }

    #[test]
    fn matches_long_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let m = rng.gen_range(0..5);
            let n = rng.gen_range(0..5);
            let b: Vec<_> = (0..=m).map(|_| c(rng.gen_range(-1.0..1.0))).collect();
            let mut a: Vec<_> = (0..=n).map(|_| c(rng.gen_range(-0.4..0.4))).collect();
            a[0] = c(1.0);
            let f = RationalFilter::new(b.clone(), a.clone()).unwrap();
            let got = f.impulse_response(25);
            let want = long_division(&b, &a, 25);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn unit_and_delay_responses() {
        let one = RationalFilter::from_real(&[1.0], &[1.0]).unwrap();
        let r = one.frequency_response(&[0.0, 1.0, PI]).unwrap();
        assert!(r.iter().all(|v| (v - c(1.0)).norm() < 1e-15));
        let delay = RationalFilter::from_real(&[0.0, 1.0], &[1.0]).unwrap();
        let r = delay.frequency_response(&[PI / 2.0]).unwrap();
        assert!((r[0] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn grid_response_is_dft_ratio() {
        let f = RationalFilter::from_real(&[0.3, -0.2, 0.7], &[1.0, -0.4, 0.25, 0.1]).unwrap();
        let len = 9;
        let pad = |v: &[Complex64]| {
            let mut p = v.to_vec();
            p.resize(len, c(0.0));
            p
        };
        let bk = dft(&pad(f.b())).unwrap();
        let ak = dft(&pad(f.a())).unwrap();
        let omegas: Vec<f64> = (0..len).map(|k| 2.0 * PI * k as f64 / len as f64).collect();
        let r = f.frequency_response(&omegas).unwrap();
        for k in 0..len {
            assert!((r[k] - bk[k] / ak[k]).norm() < 1e-10);
        }
    }

    #[test]
    fn pole_on_unit_circle_is_reported() {
        let f = RationalFilter::from_real(&[1.0], &[1.0, -1.0]).unwrap();
        match f.frequency_response(&[0.0]) {
            Err(Error::PoleOnCircle { omega, .. }) => assert_eq!(omega, 0.0),
            other => panic!("expected pole-on-circle error, got {other:?}"),
        }
    }

    #[test]
    fn poles_and_stability() {
        let f = RationalFilter::from_real(&[1.0], &[1.0, -1.1, 0.3]).unwrap();
        let mut m: Vec<f64> = f.poles().iter().map(|p| p.norm()).collect();
        m.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((m[0] - 0.5).abs() < 1e-12 && (m[1] - 0.6).abs() < 1e-12);
        assert!(f.is_stable());
        assert!(!RationalFilter::from_real(&[1.0], &[1.0, -1.2]).unwrap().is_stable());
        assert!(RationalFilter::from_real(&[1.0], &[1.0]).unwrap().poles().is_empty());
    }

    #[test]
    fn rejects_unnormalized_denominator() {
        assert!(RationalFilter::from_real(&[1.0], &[2.0, 1.0]).is_err());
        assert!(RationalFilter::from_real(&[], &[1.0]).is_err());
    }
}
