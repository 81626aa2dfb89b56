//! Frequency-sampling IIR design.
//!
//! `L+1` equally spaced samples `H_k` at `ω_k = 2πk/(L+1)` turn `B_k = H_k A_k`
//! into a cyclic convolution of the inverse DFT `h` of the samples with the
//! zero-padded denominator. The circulant matrix of `h` is partitioned and
//! solved exactly like the time-domain system. Note that `h` is the
//! impulse response folded modulo `L+1`, not the impulse response itself.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::filter::RationalFilter;
use crate::linalg::{dft, idft, Mat};
use crate::time::{check_orders, design_from_partition, DesignMode, Partition};

/// Tolerance on `H_k = conj(H_{-k})`, relative to `max(1, max|H_k|)`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// `|A_k|` at or below this leaves the response error undefined at `k`.
pub const DENOMINATOR_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySpec {
    samples: Vec<Complex64>,
    num_order: usize,
    den_order: usize,
    enforce_real: bool,
}

impl FrequencySpec {
    pub fn new(
        samples: Vec<Complex64>,
        num_order: usize,
        den_order: usize,
        enforce_real: bool,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidInput("no frequency samples".into()));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite frequency sample".into()));
        }
        check_orders(samples.len(), num_order, den_order)?;
        if enforce_real {
            check_conjugate_symmetry(&samples)?;
        }
        Ok(Self {
            samples,
            num_order,
            den_order,
            enforce_real,
        })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn num_order(&self) -> usize {
        self.num_order
    }

    pub fn den_order(&self) -> usize {
        self.den_order
    }

    pub fn enforce_real(&self) -> bool {
        self.enforce_real
    }

    /// The sample frequencies `2πk/(L+1)`.
    pub fn omegas(&self) -> Vec<f64> {
        grid(self.samples.len())
    }
}

/// `2πk/len` for `k = 0..len`.
pub fn grid(len: usize) -> Vec<f64> {
    (0..len)
        .map(|k| 2.0 * PI * k as f64 / len as f64)
        .collect()
}

fn check_conjugate_symmetry(samples: &[Complex64]) -> Result<()> {
    let len = samples.len();
    let scale = samples.iter().map(|v| v.norm()).fold(1.0_f64, f64::max);
    let worst = (0..len)
        .map(|k| (k, (samples[k] - samples[(len - k) % len].conj()).norm()))
        .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal));
    match worst {
        Some((index, deviation)) if deviation > SYMMETRY_TOLERANCE * scale => {
            Err(Error::NotConjugateSymmetric { index, deviation })
        }
        _ => Ok(()),
    }
}

/// Inverse DFT of the samples: the aliased impulse response.
pub fn pseudo_impulse(spec: &FrequencySpec) -> Result<Vec<Complex64>> {
    idft(&spec.samples)
}

/// Circulant matrix `H[i][j] = h[(i−j) mod len]`, truncated to `cols` columns.
pub fn circulant_matrix(h: &[Complex64], cols: usize) -> Mat {
    let len = h.len();
    Mat::from_fn(len, cols, |i, j| h[(i + len - j % len) % len])
}

pub fn build_cyclic_partition(
    h: &[Complex64],
    num_order: usize,
    den_order: usize,
) -> Result<Partition> {
    check_orders(h.len(), num_order, den_order)?;
    let h0 = circulant_matrix(h, den_order + 1);
    Ok(Partition::from_h0(&h0, num_order, den_order))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreqDesignReport {
    /// `ε_k = B_k − H_k A_k`.
    pub equation_error: Vec<Complex64>,
    /// Inverse DFT of `ε_k`; its first `M+1` entries vanish.
    pub cyclic_equation_error: Vec<Complex64>,
    /// `𝓔_k = B_k / A_k − H_k`, `None` where `|A_k| ≤ DENOMINATOR_FLOOR`.
    pub response_error: Vec<Option<Complex64>>,
    /// `A_k`, the denominator DFT on the sample grid.
    pub denominator_samples: Vec<Complex64>,
    pub poles: Vec<Complex64>,
    pub pole_moduli: Vec<f64>,
    pub stable: bool,
    pub rank: usize,
    pub condition_estimate: f64,
    pub mode: DesignMode,
}

impl FreqDesignReport {
    pub fn equation_error_norm(&self) -> f64 {
        crate::linalg::norm2(&self.equation_error)
    }

    /// 2-norm over the defined entries of the response error.
    pub fn response_error_norm(&self) -> f64 {
        let defined: Vec<Complex64> = self.response_error.iter().flatten().copied().collect();
        crate::linalg::norm2(&defined)
    }
}

pub fn design_freq(
    spec: &FrequencySpec,
    mode: DesignMode,
) -> Result<(RationalFilter, FreqDesignReport)> {
    let h = pseudo_impulse(spec)?;
    let part = build_cyclic_partition(&h, spec.num_order, spec.den_order)?;
    let (filter, report, _) = design_from_partition(&part, mode).map_err(|e| match e {
        Error::NoSolution {
            rank,
            order,
            condition,
            ..
        } => Error::NoSolution {
            rank,
            order,
            condition,
            advice: "use least-squares mode with more samples or change the assumed order",
        },
        other => other,
    })?;

    let len = spec.samples.len();
    let pad = |v: &[Complex64]| {
        let mut p = v.to_vec();
        p.resize(len, Complex64::new(0.0, 0.0));
        p
    };
    let bk = dft(&pad(filter.b()))?;
    let ak = dft(&pad(filter.a()))?;
    let equation_error: Vec<Complex64> = (0..len)
        .map(|k| bk[k] - spec.samples[k] * ak[k])
        .collect();
    let response_error = (0..len)
        .map(|k| (ak[k].norm() > DENOMINATOR_FLOOR).then(|| bk[k] / ak[k] - spec.samples[k]))
        .collect();

    Ok((
        filter,
        FreqDesignReport {
            equation_error,
            cyclic_equation_error: report.equation_error,
            response_error,
            denominator_samples: ak,
            poles: report.poles,
            pole_moduli: report.pole_moduli,
            stable: report.stable,
            rank: report.rank,
            condition_estimate: report.condition_estimate,
            mode,
        },
    ))
}

/// One step of a piecewise-constant magnitude: applies up to `edge`, given as
/// a fraction of the sampling rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub edge: f64,
    pub magnitude: f64,
}

/// Conjugate-symmetric samples of a piecewise-constant magnitude with linear
/// phase `e^{-jωτ}`.
///
/// Frequencies above half the sampling rate mirror the lower half. At the
/// Nyquist sample of an even-length grid the phase factor is replaced by its
/// real part so the sample stays real.
pub fn band_samples(len: usize, bands: &[Band], group_delay: f64) -> Result<Vec<Complex64>> {
    if len == 0 {
        return Err(Error::InvalidInput("sample count must be positive".into()));
    }
    if bands.is_empty() {
        return Err(Error::InvalidInput("at least one band is required".into()));
    }
    if bands.windows(2).any(|w| w[1].edge <= w[0].edge) {
        return Err(Error::InvalidInput("band edges must increase".into()));
    }
    if bands.iter().any(|b| !b.edge.is_finite() || !b.magnitude.is_finite() || b.edge <= 0.0) {
        return Err(Error::InvalidInput("band edges must be positive and finite".into()));
    }
    let last = bands[bands.len() - 1].edge;
    if last < 0.5 {
        return Err(Error::InvalidInput(format!(
            "bands end at {last}; the last edge must reach 0.5"
        )));
    }
    if !group_delay.is_finite() {
        return Err(Error::InvalidInput("group delay must be finite".into()));
    }

    Ok((0..len)
        .map(|k| {
            let signed = if 2 * k <= len { k as f64 } else { k as f64 - len as f64 };
            let f = signed.abs() / len as f64;
            let magnitude = bands
                .iter()
                .find(|b| f <= b.edge)
                .map_or(0.0, |b| b.magnitude);
            let omega = 2.0 * PI * signed / len as f64;
            if 2 * k == len {
                Complex64::new(magnitude * (omega * group_delay).cos(), 0.0)
            } else {
                Complex64::from_polar(magnitude, -omega * group_delay)
            }
        })
        .collect())
}
