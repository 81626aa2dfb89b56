//! Minimum-norm least squares through Householder QR with column pivoting.
//!
//! `A P = Q R` is formed without ever touching `AᴴA`. When the numerical rank
//! `r` falls short of the column count, the leading `r` rows of `R` are
//! compressed once more by a QR of their adjoint (a complete orthogonal
//! decomposition), which yields the minimum-norm minimizer.

use num_complex::Complex64;

use super::mat::{norm2, Mat};
use crate::error::{Error, Result};

/// Pivots smaller than this fraction of the largest one count as zero.
pub const RANK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LstsqResult {
    pub solution: Vec<Complex64>,
    /// `‖A x − y‖₂` evaluated against the original data.
    pub residual_norm: f64,
    pub rank: usize,
    /// Ratio of largest to smallest pivot magnitude; infinite when a pivot
    /// vanishes exactly.
    pub condition_estimate: f64,
}

impl LstsqResult {
    pub fn is_full_rank(&self, cols: usize) -> bool {
        self.rank == cols
    }
}

struct Reflector {
    v: Vec<Complex64>,
    tau: f64,
}

impl Reflector {
    /// Reflector mapping `x` onto a multiple of the first unit vector.
    /// Returns the reflector (if `x` is nonzero) and the resulting leading entry.
    fn new(x: &[Complex64]) -> (Option<Self>, Complex64) {
        let nrm = norm2(x);
        if nrm == 0.0 {
            return (None, Complex64::new(0.0, 0.0));
        }
        let x0 = x[0];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * nrm;
        let mut v = x.to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            return (None, x0);
        }
        (Some(Self { v, tau: 2.0 / vnorm2 }), alpha)
    }

    /// Applies `I − τ v vᴴ` to `x` (which must have the reflector's length).
    fn apply(&self, x: &mut [Complex64]) {
        let s: Complex64 = self.v.iter().zip(x.iter()).map(|(v, x)| v.conj() * x).sum();
        let s = s * self.tau;
        for (xi, vi) in x.iter_mut().zip(&self.v) {
            *xi -= vi * s;
        }
    }
}

/// Solves `min ‖A x − y‖₂`, returning the minimum-norm minimizer.
pub fn lstsq(a: &Mat, y: &[Complex64]) -> Result<LstsqResult> {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(format!(
            "least squares needs a nonempty matrix, got {m}x{n}"
        )));
    }
    if y.len() != m {
        return Err(Error::InvalidInput(format!(
            "right-hand side has length {} but matrix has {m} rows",
            y.len()
        )));
    }

    // columns stored contiguously so reflectors apply to slices
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let mut rhs = y.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let steps = m.min(n);
    let mut diag = Vec::with_capacity(steps);

    for k in 0..steps {
        let pivot = (k..n)
            .max_by(|&p, &q| {
                norm2(&cols[p][k..])
                    .partial_cmp(&norm2(&cols[q][k..]))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(k);
        cols.swap(k, pivot);
        perm.swap(k, pivot);

        let (reflector, alpha) = Reflector::new(&cols[k][k..]);
        if let Some(h) = reflector {
            for col in cols.iter_mut().skip(k + 1) {
                h.apply(&mut col[k..]);
            }
            h.apply(&mut rhs[k..]);
        }
        cols[k][k] = alpha;
        for entry in cols[k][k + 1..].iter_mut() {
            *entry = Complex64::new(0.0, 0.0);
        }
        diag.push(alpha.norm());
    }

    let largest = diag[0];
    let rank = if largest == 0.0 {
        0
    } else {
        diag.iter()
            .take_while(|&&d| d > RANK_TOLERANCE * largest)
            .count()
    };
    let smallest = diag.iter().copied().fold(f64::INFINITY, f64::min);
    let condition_estimate = if smallest == 0.0 {
        f64::INFINITY
    } else {
        largest / smallest
    };

    let mut z = vec![Complex64::new(0.0, 0.0); n];
    if rank > 0 {
        let r = |i: usize, j: usize| cols[j][i];
        let c = &rhs[..rank];
        if rank == n {
            for i in (0..n).rev() {
                let s: Complex64 = (i + 1..n).fold(c[i], |s, j| s - r(i, j) * z[j]);
                z[i] = s / r(i, i);
            }
        } else {
            // T = R[0..rank, 0..n]; factor Tᴴ = Q₂ R₂ so that T = R₂ᴴ Q₂ᴴ.
            let mut t_adj: Vec<Vec<Complex64>> = (0..rank)
                .map(|i| (0..n).map(|j| r(i, j).conj()).collect())
                .collect();
            let mut reflectors = Vec::with_capacity(rank);
            for k in 0..rank {
                let (reflector, alpha) = Reflector::new(&t_adj[k][k..]);
                if let Some(h) = &reflector {
                    for col in t_adj.iter_mut().skip(k + 1) {
                        h.apply(&mut col[k..]);
                    }
                }
                t_adj[k][k] = alpha;
                reflectors.push(reflector);
            }
            // R₂ᴴ w = c, forward substitution; R₂[i][j] = t_adj[j][i] for i ≤ j.
            let mut w = vec![Complex64::new(0.0, 0.0); n];
            for i in 0..rank {
                let mut s = c[i];
                for j in 0..i {
                    s -= t_adj[i][j].conj() * w[j];
                }
                w[i] = s / t_adj[i][i].conj();
            }
            // z = Q₂ [w; 0]
            for (k, reflector) in reflectors.iter().enumerate().rev() {
                if let Some(h) = reflector {
                    h.apply(&mut w[k..]);
                }
            }
            z = w;
        }
    }

    let mut solution = vec![Complex64::new(0.0, 0.0); n];
    for (j, &p) in perm.iter().enumerate() {
        solution[p] = z[j];
    }
    let ax = a.mul_vec(&solution)?;
    let resid: Vec<Complex64> = ax.iter().zip(y).map(|(p, q)| p - q).collect();

    Ok(LstsqResult {
        solution,
        residual_norm: norm2(&resid),
        rank,
        condition_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Gaussian elimination on the normal equations; test-only oracle.
    fn normal_equation_solve(a: &Mat, y: &[Complex64]) -> Vec<Complex64> {
        let ah = a.adjoint();
        let mut g = ah.mul_mat(a).unwrap();
        let mut rhs = ah.mul_vec(y).unwrap();
        let n = g.rows();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| g[(i, k)].norm().partial_cmp(&g[(j, k)].norm()).unwrap())
                .unwrap();
            for j in 0..n {
                let t = g[(k, j)];
                g[(k, j)] = g[(p, j)];
                g[(p, j)] = t;
            }
            rhs.swap(k, p);
            for i in k + 1..n {
                let f = g[(i, k)] / g[(k, k)];
                for j in k..n {
                    let t = g[(k, j)];
                    g[(i, j)] -= f * t;
                }
                let t = rhs[k];
                rhs[i] -= f * t;
            }
        }
        let mut x = vec![c(0.0); n];
        for i in (0..n).rev() {
            let mut s = rhs[i];
            for j in i + 1..n {
                s -= g[(i, j)] * x[j];
            }
            x[i] = s / g[(i, i)];
        }
        x
    }

    #[test]
    fn identity_system() {
        let r = lstsq(&Mat::identity(2), &[c(3.0), c(4.0)]).unwrap();
        assert!((r.solution[0] - c(3.0)).norm() < 1e-15);
        assert!((r.solution[1] - c(4.0)).norm() < 1e-15);
        assert!(r.residual_norm < 1e-15);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn mean_of_two_points() {
        let a = Mat::from_real_rows(&[&[1.0], &[1.0]]).unwrap();
        let r = lstsq(&a, &[c(1.0), c(3.0)]).unwrap();
        assert!((r.solution[0] - c(2.0)).norm() < 1e-14);
        assert!((r.residual_norm - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn matches_normal_equations_on_random_tall_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = Mat::from_fn(8, 3, |_, _| c(rng.gen_range(-1.0..1.0)));
            let y: Vec<_> = (0..8).map(|_| c(rng.gen_range(-1.0..1.0))).collect();
            let got = lstsq(&a, &y).unwrap();
            let want = normal_equation_solve(&a, &y);
            for (g, w) in got.solution.iter().zip(&want) {
                assert!((g - w).norm() < 1e-10, "{g} vs {w}");
            }
        }
    }

    #[test]
    fn complex_residual_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = Mat::from_fn(9, 4, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let y: Vec<_> = (0..9)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let r = lstsq(&a, &y).unwrap();
        let ax = a.mul_vec(&r.solution).unwrap();
        let res: Vec<_> = ax.iter().zip(&y).map(|(p, q)| p - q).collect();
        let g = a.adjoint().mul_vec(&res).unwrap();
        assert!(norm2(&g) <= 1e-9 * a.norm() * norm2(&y));
    }

    #[test]
    fn rank_deficient_gives_minimum_norm() {
        // columns identical: any x0 + x1 = 2 fits exactly, minimum norm is (1, 1)
        let a = Mat::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        let r = lstsq(&a, &[c(2.0), c(2.0)]).unwrap();
        assert_eq!(r.rank, 1);
        assert!((r.solution[0] - c(1.0)).norm() < 1e-12);
        assert!((r.solution[1] - c(1.0)).norm() < 1e-12);
        assert!(r.condition_estimate > 1e12);
    }

    #[test]
    fn wide_system_minimum_norm() {
        let a = Mat::from_real_rows(&[&[1.0, 2.0, 2.0]]).unwrap();
        let r = lstsq(&a, &[c(9.0)]).unwrap();
        // x = aᵀ (a aᵀ)⁻¹ y = (1,2,2)
        for (g, w) in r.solution.iter().zip([1.0, 2.0, 2.0]) {
            assert!((g - c(w)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_matrix_and_errors() {
        let r = lstsq(&Mat::zeros(3, 2), &[c(1.0), c(2.0), c(3.0)]).unwrap();
        assert_eq!(r.rank, 0);
        assert!(r.solution.iter().all(|z| z.norm() == 0.0));
        assert!(r.condition_estimate.is_infinite());
        assert!(lstsq(&Mat::identity(2), &[c(1.0)]).is_err());
        assert!(lstsq(&Mat::zeros(2, 0), &[c(1.0), c(1.0)]).is_err());
    }
}
