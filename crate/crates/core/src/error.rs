use thiserror::Error;

/// Errors shared by all numeric modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular: zero pivot in column {column}")]
    SingularMatrix { column: usize },

    #[error("root finding did not converge after {iterations} iterations (worst residual {worst_residual:.3e})")]
    NoConvergence {
        iterations: usize,
        worst_residual: f64,
    },

    #[error("precision loss: estimated cancellation of {cancelled_digits} digits at a {digits}-digit tier")]
    PrecisionLoss { cancelled_digits: u32, digits: u32 },

    #[error("asymptotic tail does not reach the requested accuracy (smallest term {smallest_term:.3e}, target {target:.3e})")]
    DivergentTail { smallest_term: f64, target: f64 },

    #[error("quadrature failure: error estimate {estimate:.3e} exceeds target {target:.3e}")]
    QuadratureFailure { estimate: f64, target: f64 },

    #[error("point lies on a jump ray (angular distance {distance:.3e})")]
    OnRay { distance: f64 },

    #[error("evaluation too close to a pole: |denominator| = {denominator:.3e} below guard {guard:.3e}")]
    PoleProximity { denominator: f64, guard: f64 },

    #[error("zero bound violated by root {root_index} at {value}: {which}")]
    BoundViolation {
        root_index: usize,
        value: String,
        which: String,
    },

    #[error("determinant is ill-conditioned: estimated {digits_lost} digits lost at a {digits}-digit tier")]
    IllConditioned { digits_lost: u32, digits: u32 },

    #[error("invalid spectrum partition: {0}")]
    InvalidPartition(String),

    #[error("no consecutive binning realizes (k+, k0, k-) = ({k_plus}, {k_zero}, {k_minus}): {reason}")]
    InfeasibleBinning {
        k_plus: i32,
        k_zero: i32,
        k_minus: i32,
        reason: String,
    },

    #[error("eigenvalue falls outside its target sector: {0}")]
    SectorViolation(String),

    #[error("differential polynomial is not a total x-derivative")]
    NotExact,

    #[error("sample jet too short: need derivatives through order {needed}, got {got}")]
    MissingDerivative { needed: usize, got: usize },

    #[error("finite-difference step too small: cancellation of {cancelled_digits} digits at a {digits}-digit tier")]
    StepTooSmall { cancelled_digits: u32, digits: u32 },

    #[error("schema error at {pointer}: {message}")]
    SchemaError { pointer: String, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by bad arguments rather than by numerical
    /// breakdown; the CLI maps these to exit code 2, the rest to 3.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidPartition(_)
                | Error::InfeasibleBinning { .. }
                | Error::SectorViolation(_)
                | Error::SchemaError { .. }
                | Error::InvalidInput(_)
                | Error::MissingDerivative { .. }
                | Error::OnRay { .. }
        )
    }
}
