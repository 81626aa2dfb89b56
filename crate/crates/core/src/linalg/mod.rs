//! Dense complex kernels shared by the design modules.

mod dft;
mod lstsq;
mod mat;
mod roots;
mod triangular;

pub use dft::{dft, idft};
pub use lstsq::{lstsq, LstsqResult, RANK_TOLERANCE};
pub use mat::{norm2, real_to_complex, Mat};
pub use roots::{eval as poly_eval, poly_from_roots, poly_roots, LEADING_ZERO_TOLERANCE};
pub use triangular::solve_lower_triangular;
