//! Deterministic workloads shared by the criterion benches.

use prony_core::{Complex64, RationalFilter};

/// Stable real filter with poles on a circle of radius 0.9 and a simple
/// alternating numerator.
pub fn reference_filter(num_order: usize, den_order: usize) -> RationalFilter {
    let mut a = vec![Complex64::new(1.0, 0.0)];
    for k in 0..den_order {
        let pole = 0.9 * (1.0 - 0.1 * k as f64 / den_order.max(1) as f64);
        let mut next = a.clone();
        next.push(Complex64::new(0.0, 0.0));
        for (i, c) in a.iter().enumerate() {
            next[i + 1] -= c * pole * if k % 2 == 0 { 1.0 } else { -1.0 };
        }
        a = next;
    }
    let b = (0..=num_order)
        .map(|i| Complex64::new(if i % 2 == 0 { 1.0 } else { -0.5 } / (1 + i) as f64, 0.0))
        .collect();
    RationalFilter::new(b, a).expect("reference filter is well formed")
}

/// The filter's response on the `len`-point DFT grid.
pub fn grid_samples(filter: &RationalFilter, len: usize) -> Vec<Complex64> {
    filter
        .frequency_response(&prony_core::freq::grid(len))
        .expect("reference filter has no poles on the unit circle")
}
