use thiserror::Error;

/// Errors raised by the library. Failed exact checks are usually reported in
/// structured results instead; these are for broken preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("underdetermined: {0}")]
    Underdetermined(String),
    #[error("samples are not values of a polynomial of the given degree")]
    NoFit,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("word leaves the window: {0}")]
    OutsideWindow(String),
    #[error("element is not of weight zero: {0}")]
    NotWeightZero(String),
    #[error("central character is not in scope: {0}")]
    NotInScope(String),
    #[error("ambiguous normal form: {0}")]
    Ambiguous(String),
    #[error("incompatible weights: {0}")]
    Incompatible(String),
    #[error("central character mismatch: {0}")]
    FingerprintMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
