use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow during exact arithmetic")]
    Overflow,
    #[error("insufficient dimension: need data through degree {needed}, have {available}")]
    InsufficientDimension { needed: usize, available: usize },
    #[error("invalid simplicial set: {0}")]
    InvalidSSet(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("diagrams are over different base categories")]
    MismatchedBase,
    #[error("identity violation in degree {q}: {relation} (i = {i}, j = {j})")]
    IdentityViolation { q: usize, i: usize, j: usize, relation: String },
    #[error("object {0} out of range")]
    ObjectOutOfRange(usize),
    #[error("law violation ({law}): {witness}")]
    LawViolation { law: String, witness: String },
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid module data: {0}")]
    InvalidModule(String),
    #[error("level is not Dold-Kan backed: {0}")]
    NotDkBacked(String),
    #[error("bijection failure: {0}")]
    BijectionFailure(String),
    #[error("not stabilized: {0}")]
    NotStabilized(String),
    #[error("FCP is not commutative: {0}")]
    NotCommutative(String),
    #[error("insufficient Gamma-space range: need n_max >= {needed}, have {available}")]
    InsufficientGammaRange { needed: usize, available: usize },
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
