//! Polynomial roots by simultaneous Aberth–Ehrlich iteration.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 500;

/// Leading coefficients below this fraction of the largest are dropped.
pub const LEADING_ZERO_TOLERANCE: f64 = 1e-14;

/// Evaluates `p(z)` and `p'(z)` by Horner's rule; coefficients highest degree first.
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// All roots, with multiplicity, of the polynomial whose coefficients are
/// given highest degree first.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return Err(Error::InvalidInput("polynomial has no nonzero coefficient".into()));
    }
    if !scale.is_finite() {
        return Err(Error::InvalidInput("polynomial has non-finite coefficients".into()));
    }
    let start = coeffs
        .iter()
        .position(|c| c.norm() > LEADING_ZERO_TOLERANCE * scale)
        .unwrap_or(coeffs.len());
    let trimmed = &coeffs[start..];
    if trimmed.len() < 2 {
        return Err(Error::InvalidInput(
            "polynomial must have degree at least 1".into(),
        ));
    }

    // exact zeros from vanishing trailing coefficients
    let zeros_at_origin = trimmed.iter().rev().take_while(|c| c.norm() == 0.0).count();
    let body = &trimmed[..trimmed.len() - zeros_at_origin];
    let lead = body[0];
    let monic: Vec<Complex64> = body.iter().map(|c| c / lead).collect();

    let mut roots = aberth(&monic);
    roots.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zeros_at_origin));
    Ok(roots)
}

fn aberth(monic: &[Complex64]) -> Vec<Complex64> {
    let degree = monic.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    if degree == 1 {
        return vec![-monic[1]];
    }

    // geometric mean of the root moduli sets the starting circle
    let radius = monic[degree].norm().powf(1.0 / degree as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / degree as f64 + 0.4))
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut converged = true;
        for i in 0..degree {
            let (p, dp) = eval_with_derivative(monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !step.is_finite() {
                // derivative vanished; nudge off the critical point
                let nudge = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += nudge;
                converged = false;
                continue;
            }
            z[i] -= step;
            if step.norm() > 4.0 * f64::EPSILON * (1.0 + z[i].norm()) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }

    // one Newton polish per root against the full polynomial
    for zi in z.iter_mut() {
        let (p, dp) = eval_with_derivative(monic, *zi);
        if dp.norm() > 0.0 {
            let step = p / dp;
            if step.is_finite() && step.norm() < 1e-6 * (1.0 + zi.norm()) {
                let candidate = *zi - step;
                if eval(monic, candidate).norm() <= p.norm() {
                    *zi = candidate;
                }
            }
        }
    }
    z
}

/// Monic polynomial (highest degree first) whose roots are `roots`.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = coeffs.clone();
        next.push(Complex64::new(0.0, 0.0));
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] -= c * r;
        }
        coeffs = next;
    }
    coeffs
}
