use thiserror::Error;

/// Errors returned by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    #[error("gcd(|p|, k) must be 1, got p = {p}, k = {k}")]
    NotCoprime { p: i64, k: i64 },

    #[error("invalid function spec: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point lies on the negative half-plane (Im w = {0})")]
    OutsideUpperHalfPlane(f64),

    #[error("operation requires a rational function without exponential factors")]
    NotRational,

    #[error("root finder did not converge after {iterations} iterations (worst residual {worst_residual:e})")]
    NotConverged { iterations: usize, worst_residual: f64 },

    #[error("cluster of {size} roots near {re}+{im}i is not resolvable at working precision")]
    UnresolvedCluster { size: usize, re: f64, im: f64 },

    #[error("polynomial degree {0} exceeds the cap of 512")]
    DegreeTooLarge(usize),

    #[error("requested radius {radius} exceeds trust radius {trust}")]
    BeyondTrustRadius { radius: f64, trust: f64 },

    #[error("alpha-point near a pole could not be resolved at {re}+{im}i")]
    PoleAdjacent { re: f64, im: f64 },

    #[error("winding count inconclusive on {region}: value {value}")]
    Inconclusive { region: String, value: f64 },

    #[error("series needs coefficients up to degree {needed}, only {available} given")]
    TooFewCoefficients { needed: usize, available: usize },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
