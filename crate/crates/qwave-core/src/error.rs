//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while building or transforming filter banks.
#[derive(Debug, Error)]
pub enum Error {
    /// Exact and float values were mixed in one structure or operation.
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),

    /// Series inversion requires a nonzero constant term.
    #[error("series inverse undefined: constant term is zero")]
    ZeroConstantTerm,

    /// Series inversion requires a polynomial with no negative powers.
    #[error("series inverse undefined: negative exponents present (lowest {0})")]
    NotCausal(i64),

    /// Linear solve hit a zero (or numerically vanishing) pivot.
    #[error("singular linear system: {0}")]
    SingularSystem(String),

    /// Both polynomials of a pair vanish where a nonzero value is required.
    #[error("degenerate pair: alpha and beta are both zero at the origin")]
    DegeneratePair,

    /// A round-trip that must reproduce its input did not.
    #[error("round-trip mismatch: max residual {residual:e}")]
    RoundTripMismatch { residual: f64 },

    /// Bank fails the quadratic (shift-orthogonality) condition.
    #[error("bank is not paraunitary: max quadratic residual {residual:e}")]
    NotParaunitary { residual: f64 },

    /// Polynomial support does not fit the requested genus.
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    /// Second filter row does not match the reflection of the first.
    #[error("structural mismatch: h1[{0}] is not the reflected h0 entry")]
    StructureMismatch(usize),

    /// Genus outside the supported generator range.
    #[error("unsupported genus {0}: supported range is 1..=20")]
    UnsupportedGenus(usize),

    /// Root finder did not converge or found an inconsistent root set.
    #[error("root finding failed: {0}")]
    RootFindingFailure(String),

    /// Approximation strategy string or combination is not valid here.
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    /// Screening candidate set exceeded the configured cap.
    #[error("screening budget exceeded: {candidates} candidates, cap {cap}")]
    BudgetExceeded { candidates: usize, cap: usize },

    /// Malformed argument or input value.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input file or stream could not be interpreted.
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag for CLI error envelopes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ModeMismatch(_) => "mode_mismatch",
            Error::ZeroConstantTerm => "zero_constant_term",
            Error::NotCausal(_) => "not_causal",
            Error::SingularSystem(_) => "singular_system",
            Error::DegeneratePair => "degenerate_pair",
            Error::RoundTripMismatch { .. } => "round_trip_mismatch",
            Error::NotParaunitary { .. } => "not_paraunitary",
            Error::DegreeMismatch(_) => "degree_mismatch",
            Error::StructureMismatch(_) => "structure_mismatch",
            Error::UnsupportedGenus(_) => "unsupported_genus",
            Error::RootFindingFailure(_) => "root_finding_failure",
            Error::InvalidStrategy(_) => "invalid_strategy",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Malformed(_) => "malformed_input",
            Error::Io(_) => "io_error",
            Error::Json(_) => "json_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
