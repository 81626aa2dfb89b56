//! Numerator design against the solution error for a fixed denominator.
//!
//! With `A` the `K × K` banded lower-triangular matrix of `a`, the designed
//! response is `h = A⁻¹ [b; 0] = D₁ b`, where `D₁` holds the first `M+1`
//! columns of `A⁻¹`. Minimizing `‖h_d − D₁ b‖₂` is a linear least-squares
//! problem in `b`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::filter::RationalFilter;
use crate::linalg::{lstsq, norm2, solve_lower_triangular, Mat};

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroDesignProblem {
    a: Vec<Complex64>,
    desired: Vec<Complex64>,
    num_order: usize,
}

impl ZeroDesignProblem {
    pub fn new(a: Vec<Complex64>, desired: Vec<Complex64>, num_order: usize) -> Result<Self> {
        if a.first() != Some(&Complex64::new(1.0, 0.0)) {
            return Err(Error::InvalidInput(
                "denominator must be normalized to a[0] = 1".into(),
            ));
        }
        if a.iter().chain(&desired).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite input".into()));
        }
        if desired.len() < num_order + 1 {
            return Err(Error::InvalidOrder(format!(
                "{} desired samples cannot fit {} numerator coefficients",
                desired.len(),
                num_order + 1
            )));
        }
        Ok(Self {
            a,
            desired,
            num_order,
        })
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn desired(&self) -> &[Complex64] {
        &self.desired
    }

    pub fn num_order(&self) -> usize {
        self.num_order
    }

    /// `K`, the number of samples compared.
    pub fn len(&self) -> usize {
        self.desired.len()
    }

    pub fn is_empty(&self) -> bool {
        self.desired.is_empty()
    }
}

/// `A[i][j] = a[i−j]` for `0 ≤ i−j ≤ N`, else 0.
pub fn build_banded_a(a: &[Complex64], size: usize) -> Mat {
    Mat::from_fn(size, size, |i, j| {
        if i >= j {
            a.get(i - j).copied().unwrap_or_default()
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// First `M+1` columns of `A⁻¹`, one triangular solve per unit vector.
pub fn inverse_leading_columns(a: &[Complex64], size: usize, count: usize) -> Result<Mat> {
    let banded = build_banded_a(a, size);
    let mut d1 = Mat::zeros(size, count);
    let mut unit = vec![Complex64::new(0.0, 0.0); size];
    for j in 0..count {
        unit[j] = Complex64::new(1.0, 0.0);
        let col = solve_lower_triangular(&banded, &unit)?;
        unit[j] = Complex64::new(0.0, 0.0);
        for (i, v) in col.into_iter().enumerate() {
            d1[(i, j)] = v;
        }
    }
    Ok(d1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroDesign {
    pub b: Vec<Complex64>,
    pub rank: usize,
    pub condition_estimate: f64,
    /// `‖h_d − D₁ b‖₂`.
    pub solution_error_norm: f64,
}

impl ZeroDesign {
    /// `D₁` lost rank and `b` is the minimum-norm minimizer.
    pub fn rank_deficient(&self) -> bool {
        self.rank < self.b.len()
    }
}

pub fn solve_numerator_solution_error(problem: &ZeroDesignProblem) -> Result<ZeroDesign> {
    let d1 = inverse_leading_columns(&problem.a, problem.len(), problem.num_order + 1)?;
    let fit = lstsq(&d1, &problem.desired)?;
    Ok(ZeroDesign {
        b: fit.solution,
        rank: fit.rank,
        condition_estimate: fit.condition_estimate,
        solution_error_norm: fit.residual_norm,
    })
}

/// `e = h_d − h` with `h` the first `K` impulse samples of `(b, a)`.
pub fn solution_error(problem: &ZeroDesignProblem, b: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    if b.len() != problem.num_order + 1 {
        return Err(Error::InvalidInput(format!(
            "numerator has {} coefficients, expected {}",
            b.len(),
            problem.num_order + 1
        )));
    }
    let filter = RationalFilter::new(b.to_vec(), problem.a.clone())?;
    let h = filter.impulse_response(problem.len());
    let e: Vec<Complex64> = problem.desired.iter().zip(&h).map(|(d, h)| d - h).collect();
    let norm = norm2(&e);
    Ok((e, norm))
}
