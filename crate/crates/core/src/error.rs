//! Crate-wide error type. Variants mirror the contract failures of the
//! individual engines so callers (and the CLI exit-code mapping) can
//! distinguish user errors from internal invariant breaches.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("grading violation: {0}")]
    GradingViolation(String),
    #[error("differential does not square to zero: {0}")]
    NonSquareZero(String),
    #[error("Leibniz rule violated: {0}")]
    LeibnizViolation(String),
    #[error("generator order is not nilpotent: {0}")]
    NonNilpotentOrder(String),
    #[error("product exceeds truncation degree {0}")]
    TruncationOverflow(i64),
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("linear system has no solution: {0}")]
    NoSolution(String),
    #[error("missing ddbar primitive for {0}")]
    DdbarWitnessMissing(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("splitting obstructed: {0}")]
    SplittingObstructed(String),
    #[error("psi morphism violation: {0}")]
    MorphismViolation(String),
    #[error("lemma hypotheses unmet: {0}")]
    HypothesesUnmet(String),
    #[error("internal contradiction (input violates lemma preconditions or implementation fault): {0}")]
    InternalContradiction(String),
    #[error("pairing matrix singular: {0}")]
    PairingSingular(String),
    #[error("promotion obstructed: {0}")]
    PromotionObstructed(String),
    #[error("width condition violated: {0}")]
    WidthViolated(String),
    #[error("special branch inconsistent: {0}")]
    SpecialBranchInconsistent(String),
    #[error("target does not satisfy the ddbar-Lemma: {0}")]
    TargetNotDdbar(String),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("restriction contract violated: {0}")]
    RestrictionContractViolated(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for failures that indicate bad input rather than a mathematical
    /// verdict; the CLI maps these to exit code 2.
    pub fn is_contract_error(&self) -> bool {
        !matches!(self, Error::InternalContradiction(_))
    }
}
