use thiserror::Error;

use crate::scalar::{Domain, ScalarError};

/// Faults. The absence of a generalized inverse is not an error: it is
/// reported through [`crate::Outcome::NotExists`].
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("{op} is not supported over {domain}")]
    UnsupportedDomain { op: &'static str, domain: Domain },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("routes disagree: {0}")]
    RouteDisagreement(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
}

impl Error {
    /// Route disagreements and invariant violations indicate a bug, not bad
    /// input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::RouteDisagreement(_) | Error::InvariantViolation(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
