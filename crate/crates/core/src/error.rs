use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A - A^H| = {deviation:e} exceeds {bound:e}")]
    NonHermitianInput { deviation: f64, bound: f64 },

    #[error("matrix dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Jacobi sweeps did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("point theta = {theta} lies within {reach} of a pole; rotate the chart first")]
    PoleSingularity { theta: f64, reach: f64 },

    #[error(
        "grid too coarse: level {level} moved by {shift:e} between h and h/2 (tolerance {tol:e})"
    )]
    GridTooCoarse { level: usize, shift: f64, tol: f64 },

    #[error(
        "wavefunction convention mismatch: residual {residual_binomial:e} (sqrt-binomial weight) \
         and {residual_reciprocal:e} (reciprocal weight) both exceed {bound:e}"
    )]
    ConventionMismatch {
        residual_binomial: f64,
        residual_reciprocal: f64,
        bound: f64,
    },

    #[error("sector {label} contains no basis states")]
    EmptySector { label: String },

    #[error("quadrature unconverged: doubling the quadrature moved the result by {shift:e} (tolerance {tol:e})")]
    QuadratureUnconverged { shift: f64, tol: f64 },

    #[error("integration step too large: energy drift rate {drift_rate:e} exceeds {bound:e}")]
    StepTooLarge { drift_rate: f64, bound: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
