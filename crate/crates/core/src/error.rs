use thiserror::Error;

/// Every failure the library reports. The display form starts with the
/// variant name so command-line users see a stable error identifier.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NonPositiveComponent: point '{id}' has component {index} = {value}")]
    NonPositiveComponent { id: String, index: usize, value: f64 },
    #[error("NonFiniteComponent: point '{id}' has component {index} = {value}")]
    NonFiniteComponent { id: String, index: usize, value: f64 },
    #[error("DuplicateId: '{0}'")]
    DuplicateId(String),
    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("EmptyInstance: an instance needs at least one point")]
    EmptyInstance,
    #[error("InvalidDecomposition: {0}")]
    InvalidDecomposition(String),
    #[error("AlphaBelowOne: {0}")]
    AlphaBelowOne(f64),
    #[error("EmptySubset: the solution subset is empty")]
    EmptySubset,
    #[error("UnknownId: '{0}'")]
    UnknownId(String),
    #[error("IndexOutOfRange: index {index} not in 1..={p}")]
    IndexOutOfRange { index: usize, p: usize },
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
    #[error("SpecIncompatibleWithDecomposition: {0}")]
    SpecIncompatibleWithDecomposition(String),
    #[error("ToleranceNotReached: best residual {residual} exceeds tolerance {tol}")]
    ToleranceNotReached { residual: f64, tol: f64 },
    #[error("ScalingFailure: {0}")]
    ScalingFailure(String),
    #[error("ResolutionTooSmall: resolution {m} cannot produce positive weights for p = {p}")]
    ResolutionTooSmall { p: usize, m: usize },
    #[error("NotANorm: {0}")]
    NotANorm(String),
    #[error("EpsOutOfRange: {0} not in (0, 1)")]
    EpsOutOfRange(f64),
    #[error("ConstructionFailure: {0}")]
    ConstructionFailure(String),
    #[error("PreconditionViolated: {0}")]
    Precondition(String),
    #[error("ParseError: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, e.g. `"NonPositiveComponent"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPositiveComponent { .. } => "NonPositiveComponent",
            Error::NonFiniteComponent { .. } => "NonFiniteComponent",
            Error::DuplicateId(_) => "DuplicateId",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyInstance => "EmptyInstance",
            Error::InvalidDecomposition(_) => "InvalidDecomposition",
            Error::AlphaBelowOne(_) => "AlphaBelowOne",
            Error::EmptySubset => "EmptySubset",
            Error::UnknownId(_) => "UnknownId",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::SpecIncompatibleWithDecomposition(_) => "SpecIncompatibleWithDecomposition",
            Error::ToleranceNotReached { .. } => "ToleranceNotReached",
            Error::ScalingFailure(_) => "ScalingFailure",
            Error::ResolutionTooSmall { .. } => "ResolutionTooSmall",
            Error::NotANorm(_) => "NotANorm",
            Error::EpsOutOfRange(_) => "EpsOutOfRange",
            Error::ConstructionFailure(_) => "ConstructionFailure",
            Error::Precondition(_) => "PreconditionViolated",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
