use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation not supported in this field mode: {0}")]
    UnsupportedMode(String),
    #[error("Cartan pair ({0}, {1}) needs a square root that is not in the ground field")]
    UnsupportedCartan(u32, u32),
    #[error("exponent {0} cannot be evaluated exactly")]
    UnsupportedExponent(String),
    #[error("degree cap {cap} exceeded (requested degree {degree})")]
    CapExceeded { cap: u32, degree: u32 },
    #[error("undefined sum: infinity + infinity")]
    UndefinedSum,
    #[error("degree {degree} out of range 0..={max}")]
    OutOfRange { degree: u32, max: u32 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("slot {slot} is not dominant")]
    NotDominant { slot: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("linear program failed for {tag}: {reason}")]
    Lp { tag: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
