use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A numeric parameter is outside its admissible range (e.g. `r = 0`).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The input violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Two computations that must agree did not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
