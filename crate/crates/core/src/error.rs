use std::fmt;

use thiserror::Error;

use crate::polyring::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Syntax error in an expression, carrying the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} has no exact value on the rational backend")]
    NotExact(&'static str),
    #[error("logarithm argument lies on the principal branch cut")]
    LogBranchCut,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("degenerate Möbius map (ad - bc = 0)")]
    DegenerateMobius,
    #[error("pole at base point")]
    PoleAtBasePoint,
    #[error("logarithm branch cut at base point")]
    LogBranchAtBasePoint,
    #[error("branch point: f'(z0) = 0")]
    BranchPoint,
    #[error("order budget exhausted: need {needed}, have {available}")]
    OrderExhausted { needed: usize, available: usize },
    #[error("series has a vanishing constant term")]
    ZeroConstantTerm,
    #[error("inner series must have a zero constant term")]
    NonzeroConstantTerm,
    #[error("series has a nonzero term that cannot be divided by the variable")]
    NotDivisible,
    #[error("variable family mismatch: {0} vs {1}")]
    FamilyMismatch(Family, Family),
    #[error("no value supplied for variable {0}")]
    MissingVariable(String),
    #[error("expression is not holomorphic: {0}")]
    NotHolomorphic(String),
    #[error("point outside the metric domain: {0}")]
    OutsideDomain(String),
    #[error("not an isometry of the {0} metric")]
    NotIsometry(String),
    #[error("invalid metric spec: {0}")]
    MetricSpec(String),
    #[error("vanishing first invariant derivative")]
    VanishingDerivative,
}
