use thiserror::Error;

/// Exit status for malformed input or contradictory options.
pub const EXIT_INVALID_INPUT: i32 = 2;
/// Exit status when the input is well formed but no design exists.
pub const EXIT_DESIGN_FAILURE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, field `{field}`: {message}")]
    Input {
        line: usize,
        field: String,
        message: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Design(#[from] prony_core::Error),
}

impl CliError {
    pub fn input(line: usize, field: &str, message: impl Into<String>) -> Self {
        Self::Input {
            line,
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        use prony_core::Error as E;
        match self {
            Self::Input { .. } | Self::Usage(_) => EXIT_INVALID_INPUT,
            Self::Design(e) => match e {
                E::InvalidInput(_) | E::InvalidOrder(_) | E::NotConjugateSymmetric { .. } => {
                    EXIT_INVALID_INPUT
                }
                E::Singular { .. }
                | E::NoSolution { .. }
                | E::PoleOnCircle { .. }
                | E::DegenerateMode { .. }
                | E::RepeatedModes { .. } => EXIT_DESIGN_FAILURE,
            },
        }
    }

    /// Stable machine-readable category.
    pub fn kind(&self) -> &'static str {
        use prony_core::Error as E;
        match self {
            Self::Input { .. } => "invalid-input",
            Self::Usage(_) => "usage",
            Self::Design(e) => match e {
                E::InvalidInput(_) => "invalid-input",
                E::InvalidOrder(_) => "invalid-order",
                E::NotConjugateSymmetric { .. } => "invalid-spec",
                E::Singular { .. } => "singular",
                E::NoSolution { .. } => "no-solution",
                E::PoleOnCircle { .. } => "pole-on-circle",
                E::DegenerateMode { .. } => "degenerate-mode",
                E::RepeatedModes { .. } => "repeated-modes",
            },
        }
    }
}
