use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("singular matrix: zero pivot at row {row}")]
    Singular { row: usize },

    /// The square interpolation system is singular and inconsistent.
    #[error(
        "no solution: H2 has rank {rank} < {order} (condition estimate {condition:.3e}) \
         and the samples are inconsistent with it; {advice}"
    )]
    NoSolution {
        rank: usize,
        order: usize,
        condition: f64,
        advice: &'static str,
    },

    #[error("invalid frequency spec: sample {index} violates conjugate symmetry by {deviation:.3e}")]
    NotConjugateSymmetric { index: usize, deviation: f64 },

    #[error("response undefined at omega = {omega}: denominator vanishes (|A| = {magnitude:.3e})")]
    PoleOnCircle { omega: f64, magnitude: f64 },

    #[error("degenerate mode: root {index} is zero; lower the model order")]
    DegenerateMode { index: usize },

    #[error("repeated modes {first} and {second} (separation {separation:.3e}); repeated-root signals are not supported")]
    RepeatedModes {
        first: usize,
        second: usize,
        separation: f64,
    },
}
