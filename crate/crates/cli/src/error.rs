use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] spinon::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use spinon::Error as E;
        match self {
            CliError::Validation(_) => 2,
            CliError::Core(E::InvalidParameter(_) | E::EmptySector { .. } | E::PoleSingularity { .. }) => 2,
            CliError::Core(E::GridTooCoarse { .. } | E::QuadratureUnconverged { .. }) => 3,
            CliError::Core(E::NoConvergence { .. } | E::StepTooLarge { .. }) => 3,
            CliError::Core(E::ConventionMismatch { .. }) => 4,
            CliError::Core(_) => 1,
            CliError::Io(_) => 1,
        }
    }
}
