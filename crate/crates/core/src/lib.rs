//! IIR filter design and exponential parameter identification by Prony,
//! Padé and linear-prediction methods.
//!
//! Every design reduces to the same partitioned linear system built from a
//! sequence of response samples:
//!
//! * [`time`] uses the desired impulse response (lower-triangular Toeplitz),
//! * [`freq`] uses the inverse DFT of equally spaced frequency samples
//!   (circulant),
//! * [`zeros`] redesigns a numerator for a fixed denominator against the
//!   true solution error,
//! * [`ident`] roots the denominator to recover exponential modes.
//!
//! All arithmetic is complex; real data carries zero imaginary parts.

pub mod error;
pub mod filter;
pub mod freq;
pub mod ident;
pub mod linalg;
pub mod time;
pub mod zeros;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use filter::{frequency_response, impulse_response, RationalFilter};
pub use freq::{
    band_samples, build_cyclic_partition, design_freq, pseudo_impulse, Band, FreqDesignReport,
    FrequencySpec,
};
pub use ident::{identify, synthesize, ExponentialModel, Identification, Mode, SampledSignal};
pub use linalg::{dft, idft, lstsq, poly_roots, solve_lower_triangular, LstsqResult, Mat};
pub use time::{
    build_partition, design_time, solve_denominator, solve_numerator, DenominatorFit,
    DesignMode, DesignReport, Partition, TimeDesignProblem,
};
pub use zeros::{
    build_banded_a, solution_error, solve_numerator_solution_error, ZeroDesign,
    ZeroDesignProblem,
};
