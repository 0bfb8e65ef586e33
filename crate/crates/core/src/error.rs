use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The cotangent argument is an integer multiple of pi.
    #[error("cotangent pole: k = {k} divides {numerator}")]
    Pole { numerator: u128, k: u64 },
    #[error("capacity exceeded: {what} = {requested} > {max}")]
    Capacity {
        what: &'static str,
        requested: usize,
        max: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An identity that must hold exactly drifted beyond its numerical allowance.
    #[error("numerical consistency failure: {0}")]
    NumericalConsistency(String),
}
