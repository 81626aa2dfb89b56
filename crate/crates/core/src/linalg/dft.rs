//! Direct DFT with the `e^{-j2πnk/n}` forward kernel.
//!
//! Sizes in this crate stay in the hundreds, so the O(n²) sum is used with
//! twiddles taken from a table indexed by `(n·k) mod len`, which keeps the
//! phases exact instead of accumulating rotation error.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

fn transform(x: &[Complex64], sign: f64) -> Result<Vec<Complex64>> {
    let len = x.len();
    if len == 0 {
        return Err(Error::InvalidInput("DFT of an empty sequence".into()));
    }
    let twiddle: Vec<Complex64> = (0..len)
        .map(|m| Complex64::from_polar(1.0, sign * 2.0 * PI * m as f64 / len as f64))
        .collect();
    Ok((0..len)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(n, v)| v * twiddle[(n * k) % len])
                .sum()
        })
        .collect())
}

pub fn dft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    transform(x, -1.0)
}

/// Inverse of [`dft`], including the `1/n` scaling.
pub fn idft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    let scale = 1.0 / x.len().max(1) as f64;
    Ok(transform(x, 1.0)?.into_iter().map(|v| v * scale).collect())
}
