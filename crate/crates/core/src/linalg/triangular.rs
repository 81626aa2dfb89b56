use num_complex::Complex64;

use super::mat::Mat;
use crate::error::{Error, Result};

/// Forward substitution for `A x = y`, reading only the lower triangle of `A`.
pub fn solve_lower_triangular(a: &Mat, y: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.rows();
    if a.cols() != n || y.len() != n {
        return Err(Error::InvalidInput(format!(
            "triangular solve needs a square matrix and matching vector, got {}x{} and {}",
            a.rows(),
            a.cols(),
            y.len()
        )));
    }
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        let d = a[(i, i)];
        if d.norm() == 0.0 {
            return Err(Error::Singular { row: i });
        }
        let row = a.row(i);
        let s: Complex64 = row[..i].iter().zip(&x).map(|(l, x)| l * x).sum();
        x.push((y[i] - s) / d);
    }
    Ok(x)
}
