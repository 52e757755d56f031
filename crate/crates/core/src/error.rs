use thiserror::Error;

/// Where a raw vector sits relative to the unit ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormClass {
    /// `x.x = 0`: on the absolute.
    Absolute,
    /// `x.x < 0`: beyond the absolute.
    External,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("k_{index} does not divide the coefficient (exponent {exponent}) in this space")]
    NonDivisible { index: usize, exponent: i32 },

    #[error("tangent pole at x = {0}")]
    Pole(f64),

    #[error("inconsistent (C, S) pair for k = {k}: C = {c}, S = {s}, residual {residual:e}")]
    InconsistentPair { k: i32, c: f64, s: f64, residual: f64 },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("point lies on the absolute (x.x = {0:e})")]
    OnAbsolute(f64),

    #[error("point lies beyond the absolute (x.x = {0:e})")]
    NegativeNorm(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),

    #[error("mixed-type configuration: {0}")]
    CrossType(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("vertex basis is singular")]
    SingularBasis,

    #[error("degenerate span: {0}")]
    DegenerateSpan(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSignature(_) => "invalid-signature",
            Error::NonDivisible { .. } => "non-divisible",
            Error::Pole(_) => "pole",
            Error::InconsistentPair { .. } => "inconsistent-pair",
            Error::Domain(_) => "domain",
            Error::OnAbsolute(_) => "on-absolute",
            Error::NegativeNorm(_) => "negative-norm",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Index(_) => "index",
            Error::DegenerateTriangle(_) => "degenerate-triangle",
            Error::CrossType(_) => "cross-type",
            Error::NoSolution(_) => "no-solution",
            Error::SingularBasis => "singular-basis",
            Error::DegenerateSpan(_) => "degenerate-span",
            Error::Invalid(_) => "invalid",
        }
    }

    /// Errors caused by malformed input rather than by the geometry.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidSignature(_) | Error::DimensionMismatch { .. } | Error::Index(_) | Error::Invalid(_)
        )
    }

    /// Classification for raw vectors that cannot be normalized.
    pub fn norm_class(&self) -> Option<NormClass> {
        match self {
            Error::OnAbsolute(_) => Some(NormClass::Absolute),
            Error::NegativeNorm(_) => Some(NormClass::External),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
