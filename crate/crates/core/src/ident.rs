//! Sum-of-exponentials identification (classical Prony).
//!
//! Samples `y(n) = Σ K_k λ_kⁿ` with `λ_k = e^{α_k T}` have a z-transform with
//! an order-`N` denominator and an order-`N−1` numerator. The denominator is
//! found by the time-domain design, its roots give the `λ_k`, and the
//! amplitudes follow from a Vandermonde least-squares fit over every sample.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{lstsq, poly_roots, Mat};
use crate::time::{design_time, DesignMode, TimeDesignProblem};

/// Roots closer than this are treated as one repeated root.
///
/// Simple roots come out of the rooting step accurate to roughly machine
/// precision, while a double root splits by about the square root of it, so
/// the threshold sits well above `1e-8`.
pub const REPEATED_ROOT_TOLERANCE: f64 = 1e-6;

/// Roots at or below this modulus count as zero.
pub const ZERO_ROOT_TOLERANCE: f64 = 1e-12;

/// Relative tolerance for treating two root moduli as tied when ordering.
const ORDER_TIE_TOLERANCE: f64 = 1e-9;
const NEGATIVE_AXIS_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub amplitude: Complex64,
    /// Exponent per unit time, principal branch: `Im α ∈ (−π/T, π/T]`.
    pub exponent: Complex64,
}

impl Mode {
    /// `λ = e^{αT}`.
    pub fn root(&self, period: f64) -> Complex64 {
        (self.exponent * period).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialModel {
    modes: Vec<Mode>,
    period: f64,
}

impl ExponentialModel {
    /// Builds a model, ordering modes by descending `|λ|` and then by
    /// ascending `arg λ`.
    pub fn new(modes: Vec<Mode>, period: f64) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "sample period must be positive, got {period}"
            )));
        }
        if modes
            .iter()
            .any(|m| !m.amplitude.is_finite() || !m.exponent.is_finite())
        {
            return Err(Error::InvalidInput("non-finite mode parameter".into()));
        }
        let mut model = Self { modes, period };
        model.sort_modes();
        Ok(model)
    }

    fn sort_modes(&mut self) {
        let t = self.period;
        self.modes.sort_by(|x, y| {
            y.root(t)
                .norm()
                .partial_cmp(&x.root(t).norm())
                .unwrap_or(Ordering::Equal)
        });
        // within runs of tied moduli, order by phase
        let mut start = 0;
        while start < self.modes.len() {
            let lead = self.modes[start].root(t).norm();
            let mut end = start + 1;
            while end < self.modes.len()
                && (lead - self.modes[end].root(t).norm()).abs()
                    <= ORDER_TIE_TOLERANCE * lead.max(1.0)
            {
                end += 1;
            }
            self.modes[start..end].sort_by(|x, y| {
                x.root(t)
                    .arg()
                    .partial_cmp(&y.root(t).arg())
                    .unwrap_or(Ordering::Equal)
            });
            start = end;
        }
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn order(&self) -> usize {
        self.modes.len()
    }

    pub fn roots(&self) -> Vec<Complex64> {
        self.modes.iter().map(|m| m.root(self.period)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub samples: Vec<Complex64>,
    pub period: f64,
}

impl SampledSignal {
    pub fn new(samples: Vec<Complex64>, period: f64) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "sample period must be positive, got {period}"
            )));
        }
        Ok(Self { samples, period })
    }

    pub fn from_real(samples: &[f64], period: f64) -> Result<Self> {
        Self::new(
            samples.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            period,
        )
    }
}

/// `y(m) = Σ_k K_k e^{α_k T m}` for `m = 0..count`.
pub fn synthesize(model: &ExponentialModel, count: usize) -> SampledSignal {
    let t = model.period;
    let samples = (0..count)
        .map(|m| {
            model
                .modes
                .iter()
                .map(|mode| mode.amplitude * (mode.exponent * (t * m as f64)).exp())
                .sum()
        })
        .collect();
    SampledSignal { samples, period: t }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Identification {
    pub model: ExponentialModel,
    /// Denominator `(1, a₁, …, a_N)` of the linear-prediction fit.
    pub denominator: Vec<Complex64>,
    /// `‖y − synthesize(model)‖₂` over the supplied samples.
    pub residual_norm: f64,
    pub condition_estimate: f64,
}

/// ln(λ) with arg in (−π, π]; roots a rounding error away from the
/// negative real axis land on +π.
fn principal_log(root: Complex64) -> Complex64 {
    if root.re < 0.0 && root.im.abs() <= NEGATIVE_AXIS_TOLERANCE * root.norm() {
        Complex64::new(root.norm().ln(), std::f64::consts::PI)
    } else {
        root.ln()
    }
}

pub fn identify(signal: &SampledSignal, order: usize) -> Result<Identification> {
    if order == 0 {
        return Err(Error::InvalidOrder("model order must be at least 1".into()));
    }
    let count = signal.samples.len();
    if count < 2 * order {
        return Err(Error::InvalidOrder(format!(
            "{count} samples cannot identify {order} modes; need at least {}",
            2 * order
        )));
    }
    let mode = if count == 2 * order {
        DesignMode::Interpolate
    } else {
        DesignMode::LeastSquares
    };
    let problem = TimeDesignProblem::new(signal.samples.clone(), order - 1, order)?;
    let (filter, report) = design_time(&problem, mode)?;
    let denominator = filter.a().to_vec();

    let roots = poly_roots(&denominator)?;
    if let Some(index) = roots.iter().position(|r| r.norm() <= ZERO_ROOT_TOLERANCE) {
        return Err(Error::DegenerateMode { index });
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let separation = (roots[i] - roots[j]).norm();
            if separation < REPEATED_ROOT_TOLERANCE * roots[i].norm().max(1.0) {
                return Err(Error::RepeatedModes {
                    first: i,
                    second: j,
                    separation,
                });
            }
        }
    }

    let vandermonde = Mat::from_fn(count, order, |n, k| roots[k].powu(n as u32));
    let fit = lstsq(&vandermonde, &signal.samples)?;

    let t = signal.period;
    let modes = roots
        .iter()
        .zip(&fit.solution)
        .map(|(root, &amplitude)| Mode {
            amplitude,
            exponent: principal_log(*root) / t,
        })
        .collect();
    Ok(Identification {
        model: ExponentialModel::new(modes, t)?,
        denominator,
        residual_norm: fit.residual_norm,
        condition_estimate: report.condition_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn single_real_mode() {
        let y: Vec<f64> = (0..2).map(|n| 2.0 * 0.9f64.powi(n)).collect();
        let id = identify(&SampledSignal::from_real(&y, 1.0).unwrap(), 1).unwrap();
        let m = id.model.modes()[0];
        assert!((m.amplitude - c(2.0)).norm() < 1e-12);
        assert!((m.exponent - c(0.9f64.ln())).norm() < 1e-12);
        assert!((m.exponent.re + 0.10536).abs() < 1e-5);
    }

    #[test]
    fn constant_signal() {
        let id = identify(&SampledSignal::from_real(&[1.0; 5], 1.0).unwrap(), 1).unwrap();
        let m = id.model.modes()[0];
        assert!((m.amplitude - c(1.0)).norm() < 1e-12);
        assert!(m.exponent.norm() < 1e-12);
        assert!(id.residual_norm < 1e-12);
    }

    #[test]
    fn synthesize_constant_and_conjugate_pair() {
        let ones = ExponentialModel::new(
            vec![Mode {
                amplitude: c(1.0),
                exponent: c(0.0),
            }],
            0.5,
        )
        .unwrap();
        assert!(synthesize(&ones, 4).samples.iter().all(|v| *v == c(1.0)));

        let alpha = Complex64::new(-0.3, 2.0);
        let pair = ExponentialModel::new(
            vec![
                Mode { amplitude: Complex64::new(0.5, 0.2), exponent: alpha },
                Mode { amplitude: Complex64::new(0.5, -0.2), exponent: alpha.conj() },
            ],
            0.25,
        )
        .unwrap();
        assert!(synthesize(&pair, 16).samples.iter().all(|v| v.im.abs() < 1e-12));
    }

    #[test]
    fn ordering_by_modulus_then_phase() {
        let t = 1.0;
        let model = ExponentialModel::new(
            vec![
                Mode { amplitude: c(1.0), exponent: Complex64::new(-0.5, 0.0) },
                Mode { amplitude: c(1.0), exponent: Complex64::new(-0.1, 1.0) },
                Mode { amplitude: c(1.0), exponent: Complex64::new(-0.1, -1.0) },
            ],
            t,
        )
        .unwrap();
        let im: Vec<f64> = model.modes().iter().map(|m| m.exponent.im).collect();
        assert_eq!(im, vec![-1.0, 1.0, 0.0]);
    }

    #[test]
    fn zero_root_is_degenerate() {
        // y = (1, 0, 0, 0) has memory of one sample; an order-2 fit needs λ = 0
        let sig = SampledSignal::from_real(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1.0).unwrap();
        let err = identify(&sig, 2).unwrap_err();
        assert!(matches!(err, Error::DegenerateMode { .. }), "{err:?}");
    }

    #[test]
    fn repeated_root_is_rejected() {
        // y(n) = (1 + n) 0.5ⁿ has a double root at 0.5
        let y: Vec<f64> = (0..8).map(|n| (1.0 + n as f64) * 0.5f64.powi(n)).collect();
        let err = identify(&SampledSignal::from_real(&y, 1.0).unwrap(), 2).unwrap_err();
        assert!(matches!(err, Error::RepeatedModes { .. }), "{err:?}");
    }

    #[test]
    fn too_few_samples() {
        let sig = SampledSignal::from_real(&[1.0, 2.0, 3.0], 1.0).unwrap();
        assert!(matches!(identify(&sig, 2), Err(Error::InvalidOrder(_))));
        assert!(SampledSignal::from_real(&[1.0], 0.0).is_err());
    }
}
