use thiserror::Error;

/// Everything that can go wrong while validating, solving or certifying.
///
/// The `Display` text of each variant starts with the variant name so that
/// command-line users can grep for it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("EmptyInstance: an instance needs at least one activity")]
    EmptyInstance,
    #[error("NonPositiveWeight: alpha[{index}] = {value} must be > 0")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("NonPositivePrice: p[{index}] = {value} must be > 0")]
    NonPositivePrice { index: usize, value: f64 },
    #[error("NonPositiveCapacity: m = {value} must be > 0")]
    NonPositiveCapacity { value: f64 },
    #[error("NonFinite: {field} contains NaN or infinity")]
    NonFinite { field: &'static str },
    #[error("LengthMismatch: {field} has length {found}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("DomainError: x[{index}] = {value} must be > 0")]
    DomainError { index: usize, value: f64 },
    #[error("NonPositiveScale: scale factor {value} must be > 0")]
    NonPositiveScale { value: f64 },
    #[error("NonPositiveTolerance: tolerance {value} must be > 0")]
    NonPositiveTolerance { value: f64 },
    #[error("NoCertificateNeeded: sum of p does not exceed m, x = 1 is optimal by feasibility")]
    NoCertificateNeeded,
    #[error("InconsistentSolution: {0}")]
    InconsistentSolution(String),
    #[error("NonPositiveLambda: lambda = {value} must be > 0")]
    NonPositiveLambda { value: f64 },
    #[error("BracketFailure: multiplier bracket does not straddle the root")]
    BracketFailure,
    #[error("MaxIterExceeded: bisection did not converge in {0} iterations")]
    MaxIterExceeded(usize),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("ConfigError: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
