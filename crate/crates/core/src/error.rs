use thiserror::Error;

use crate::blocks::BlockKind;

/// Every failure the library can surface.
///
/// Variants carry a stable machine-readable [`Error::code`] so that the CLI can
/// report them in JSON mode without string matching.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph is not simple: {0}")]
    NonSimple(String),
    #[error("asymmetric adjacency: {0} lists {1} but {1} does not list {0}")]
    AsymmetricAdjacency(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system has genus > 0 (v - e + f = {0})")]
    GenusNonZero(i64),
    #[error("dart {0}->{1} is not an edge of the graph")]
    UnknownDart(usize, usize),
    #[error("missing outer dart: {0}")]
    MissingOuterDart(String),
    #[error("cycle length {0} is below 3")]
    BadLength(usize),
    #[error("triangular-mode face contribution requires pseudofaces")]
    MissingPseudoface,
    #[error("operation requires quadrangular mode")]
    WrongMode,
    #[error("conservation identity violated: {0}")]
    ConservationViolation(String),
    #[error("unknown theorem profile '{0}'")]
    UnknownProfile(String),
    #[error("block {block} classified as {kind:?}, outside the profile catalog")]
    UnexpectedBlock { block: usize, kind: BlockKind },
    #[error("profile coefficients give a degenerate bound (beta + gamma = {0})")]
    DegenerateProfile(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("n = {n} exceeds the search ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
    #[error("random generation gave up after {0} retries")]
    RetriesExhausted(usize),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::NonSimple(_) => "NonSimple",
            Error::AsymmetricAdjacency(..) => "AsymmetricAdjacency",
            Error::Disconnected => "Disconnected",
            Error::GenusNonZero(_) => "GenusNonZero",
            Error::UnknownDart(..) => "UnknownDart",
            Error::MissingOuterDart(_) => "MissingOuterDart",
            Error::BadLength(_) => "BadLength",
            Error::MissingPseudoface => "MissingPseudoface",
            Error::WrongMode => "WrongMode",
            Error::ConservationViolation(_) => "ConservationViolation",
            Error::UnknownProfile(_) => "UnknownProfile",
            Error::UnexpectedBlock { .. } => "UnexpectedBlock",
            Error::DegenerateProfile(_) => "DegenerateProfile",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::CeilingExceeded { .. } => "CeilingExceeded",
            Error::RetriesExhausted(_) => "RetriesExhausted",
            Error::Internal(_) => "InternalAssertion",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
