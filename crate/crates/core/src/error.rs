use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must have at least one coefficient")]
    EmptySeries,
    #[error("evaluation point |z| = {modulus} lies outside the open unit disk")]
    OutsideDisk { modulus: f64 },
    #[error("derivative order {0} not supported (expected 1, 2 or 3)")]
    DerivativeOrder(usize),
    #[error("{name} must be strictly positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("p(0) must equal 1, got {re} + {im}i")]
    NotNormalized { re: f64, im: f64 },
    #[error("boundary curve needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("region {0} is not a theorem target (expected sine, cardioid, crescent or arcsinh)")]
    NotATarget(&'static str),
    #[error("refinement did not stabilise: successive minima {first} and {second}")]
    NonConvergence { first: f64, second: f64 },
    #[error("malformed series JSON: {0}")]
    SeriesFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}
