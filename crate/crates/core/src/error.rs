use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Parameters fall outside the domain where an operation is defined.
    #[error("parameter domain: {0}")]
    Domain(String),

    /// Exhaustive enumeration would visit more profiles than allowed.
    #[error("enumeration needs {profiles} profiles, budget is {budget}")]
    BudgetExceeded { profiles: BigUint, budget: u64 },

    /// A serialized profile does not satisfy the selection invariants.
    #[error("invalid selection profile: {0}")]
    InvalidProfile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
