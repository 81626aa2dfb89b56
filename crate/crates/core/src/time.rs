//! Time-domain Prony / Padé design.
//!
//! The desired impulse samples `h_d[0..=L]` fill a lower-triangular Toeplitz
//! matrix whose first `N+1` columns relate the coefficients by
//!
//! ```text
//! [b; 0] = [ H1      ] [1 ]
//!          [ h1  H2  ] [a*]
//! ```
//!
//! The lower `L−M` rows determine the denominator (exactly when `H2` is
//! square, in the least-squares sense when it is tall); the upper `M+1` rows
//! then give the numerator directly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::filter::RationalFilter;
use crate::linalg::{lstsq, Mat};

/// Relative residual below which a rank-deficient interpolation system is
/// considered consistent.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-9;

/// How the lower block of the convolution system is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DesignMode {
    /// Square `H2`: match every given sample exactly.
    Interpolate,
    /// Tall `H2`: minimize the equation error in the 2-norm.
    LeastSquares,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeDesignProblem {
    desired: Vec<Complex64>,
    num_order: usize,
    den_order: usize,
}

impl TimeDesignProblem {
    pub fn new(desired: Vec<Complex64>, num_order: usize, den_order: usize) -> Result<Self> {
        if desired.is_empty() {
            return Err(Error::InvalidInput("no desired samples".into()));
        }
        if desired.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite desired sample".into()));
        }
        check_orders(desired.len(), num_order, den_order)?;
        Ok(Self {
            desired,
            num_order,
            den_order,
        })
    }

    pub fn from_real(desired: &[f64], num_order: usize, den_order: usize) -> Result<Self> {
        Self::new(
            desired.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            num_order,
            den_order,
        )
    }

    pub fn desired(&self) -> &[Complex64] {
        &self.desired
    }

    pub fn num_order(&self) -> usize {
        self.num_order
    }

    pub fn den_order(&self) -> usize {
        self.den_order
    }

    /// `L`, the index of the last desired sample.
    pub fn last_index(&self) -> usize {
        self.desired.len() - 1
    }
}

pub(crate) fn check_orders(samples: usize, num_order: usize, den_order: usize) -> Result<()> {
    if samples < num_order + den_order + 1 {
        return Err(Error::InvalidOrder(format!(
            "{samples} samples cannot determine M = {num_order}, N = {den_order}; \
             need at least M + N + 1 = {}",
            num_order + den_order + 1
        )));
    }
    Ok(())
}

/// The blocks `H1`, `h1`, `H2` cut from the first `N+1` columns of the
/// convolution matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    /// `H1`, `(M+1) × (N+1)`.
    pub numerator_block: Mat,
    /// `h1`, length `L−M`.
    pub target: Vec<Complex64>,
    /// `H2`, `(L−M) × N`; has zero columns when `N = 0`.
    pub prediction: Mat,
}

impl Partition {
    /// Cuts the partition from any `(L+1) × (N+1)` (or wider) matrix `H0`.
    pub(crate) fn from_h0(h0: &Mat, num_order: usize, den_order: usize) -> Self {
        let rows = h0.rows();
        let lower = rows - num_order - 1;
        Self {
            numerator_block: h0.block(0, 0, num_order + 1, den_order + 1),
            target: (num_order + 1..rows).map(|i| h0[(i, 0)]).collect(),
            prediction: h0.block(num_order + 1, 1, lower, den_order),
        }
    }

    pub fn num_order(&self) -> usize {
        self.numerator_block.rows() - 1
    }

    pub fn den_order(&self) -> usize {
        self.numerator_block.cols() - 1
    }

    /// Reassembles `H0 = [H1; h1 H2]`.
    pub fn assemble(&self) -> Mat {
        let upper = self.numerator_block.rows();
        let rows = upper + self.target.len();
        Mat::from_fn(rows, self.den_order() + 1, |i, j| {
            if i < upper {
                self.numerator_block[(i, j)]
            } else if j == 0 {
                self.target[i - upper]
            } else {
                self.prediction[(i - upper, j - 1)]
            }
        })
    }

    /// `ε = [b; 0] − H0 a`, full length `L+1`.
    pub fn equation_error(&self, b: &[Complex64], a: &[Complex64]) -> Result<Vec<Complex64>> {
        let h0 = self.assemble();
        let mut eps = h0.mul_vec(a)?;
        for (i, e) in eps.iter_mut().enumerate() {
            let bi = b.get(i).copied().unwrap_or_default();
            *e = bi - *e;
        }
        Ok(eps)
    }
}

/// Lower-triangular Toeplitz matrix of `h`, truncated to its first `cols` columns.
pub fn convolution_matrix(h: &[Complex64], cols: usize) -> Mat {
    Mat::from_fn(h.len(), cols, |i, j| {
        if i >= j {
            h[i - j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn build_partition(problem: &TimeDesignProblem) -> Partition {
    let h0 = convolution_matrix(&problem.desired, problem.den_order + 1);
    Partition::from_h0(&h0, problem.num_order, problem.den_order)
}

/// Denominator together with the diagnostics of the solve that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct DenominatorFit {
    /// `(1, a*)`.
    pub a: Vec<Complex64>,
    pub rank: usize,
    pub condition_estimate: f64,
    /// `‖h1 + H2 a*‖₂`.
    pub residual_norm: f64,
}

pub fn solve_denominator(part: &Partition, mode: DesignMode) -> Result<DenominatorFit> {
    let n = part.den_order();
    let rows = part.target.len();
    match mode {
        DesignMode::Interpolate if rows != n => {
            return Err(Error::InvalidOrder(format!(
                "interpolation needs L = M + N; H2 is {rows}x{n}"
            )))
        }
        DesignMode::LeastSquares if rows <= n => {
            return Err(Error::InvalidOrder(format!(
                "least squares needs L - M > N; H2 is {rows}x{n}"
            )))
        }
        _ => {}
    }

    let one = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Ok(DenominatorFit {
            a: vec![one],
            rank: 0,
            condition_estimate: 1.0,
            residual_norm: crate::linalg::norm2(&part.target),
        });
    }

    let rhs: Vec<Complex64> = part.target.iter().map(|v| -v).collect();
    let fit = lstsq(&part.prediction, &rhs)?;
    // A rank-deficient square system is acceptable only when it is consistent;
    // the minimum-norm solution then still interpolates every sample.
    let scale = crate::linalg::norm2(&part.target)
        + part.prediction.norm() * crate::linalg::norm2(&fit.solution);
    let consistent = fit.residual_norm <= CONSISTENCY_TOLERANCE * scale.max(f64::MIN_POSITIVE);
    if mode == DesignMode::Interpolate && fit.rank < n && !consistent {
        return Err(Error::NoSolution {
            rank: fit.rank,
            order: n,
            condition: fit.condition_estimate,
            advice: "use least-squares mode or change the assumed order",
        });
    }
    let mut a = Vec::with_capacity(n + 1);
    a.push(one);
    a.extend(fit.solution);
    Ok(DenominatorFit {
        a,
        rank: fit.rank,
        condition_estimate: fit.condition_estimate,
        residual_norm: fit.residual_norm,
    })
}

/// `b = H1 a`.
pub fn solve_numerator(part: &Partition, a: &[Complex64]) -> Result<Vec<Complex64>> {
    if a.first() != Some(&Complex64::new(1.0, 0.0)) {
        return Err(Error::InvalidInput("denominator must start with 1".into()));
    }
    part.numerator_block.mul_vec(a)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignReport {
    /// `ε` of length `L+1`; the first `M+1` entries vanish by construction.
    pub equation_error: Vec<Complex64>,
    pub poles: Vec<Complex64>,
    pub pole_moduli: Vec<f64>,
    pub stable: bool,
    pub rank: usize,
    pub condition_estimate: f64,
    pub mode: DesignMode,
}

impl DesignReport {
    pub(crate) fn new(
        filter: &RationalFilter,
        equation_error: Vec<Complex64>,
        fit: &DenominatorFit,
        mode: DesignMode,
    ) -> Self {
        let poles = filter.poles();
        let pole_moduli: Vec<f64> = poles.iter().map(|p| p.norm()).collect();
        let stable = pole_moduli.iter().all(|&r| r < 1.0);
        Self {
            equation_error,
            poles,
            pole_moduli,
            stable,
            rank: fit.rank,
            condition_estimate: fit.condition_estimate,
            mode,
        }
    }

    pub fn equation_error_norm(&self) -> f64 {
        crate::linalg::norm2(&self.equation_error)
    }
}

/// Runs the partition solve and packages the filter with its report.
pub(crate) fn design_from_partition(
    part: &Partition,
    mode: DesignMode,
) -> Result<(RationalFilter, DesignReport, DenominatorFit)> {
    let fit = solve_denominator(part, mode)?;
    let b = solve_numerator(part, &fit.a)?;
    let eps = part.equation_error(&b, &fit.a)?;
    let filter = RationalFilter::new(b, fit.a.clone())?;
    let report = DesignReport::new(&filter, eps, &fit, mode);
    Ok((filter, report, fit))
}

pub fn design_time(
    problem: &TimeDesignProblem,
    mode: DesignMode,
) -> Result<(RationalFilter, DesignReport)> {
    let part = build_partition(problem);
    let (filter, report, _) = design_from_partition(&part, mode)?;
    Ok((filter, report))
}
