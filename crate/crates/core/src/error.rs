use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degree {degree} is below the degenerate threshold for divisor {divisor} (need d >= s + 1 >= 3)")]
    DegenerateDegree { degree: String, divisor: String },

    #[error("expected an integer in {context}, got {value}")]
    NonIntegral { context: String, value: String },

    #[error("r = {r} is divisible by 3: outside the quadric scroll family (see the sectional-genus-one variant)")]
    DivisibleByThree { r: String },

    #[error("r = {r} is outside the cubic scroll classes (binom(r+3,3) - 4 is not divisible by 6)")]
    OutsideCubicClasses { r: String },

    #[error("infeasible constraints: fixed h({index}) = {fixed} lies below its closed lower bound {closed}")]
    Infeasible { index: usize, fixed: i64, closed: i64 },

    #[error("rank stabilization inconclusive after {samples} samples (kernel dimension {kernel_dim}); raise the sample budget")]
    Inconclusive { samples: usize, kernel_dim: usize },

    #[error("parameter point lies in the indeterminacy locus of the projection")]
    IndeterminacyLocus,

    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
