use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A triangular solve hit a zero pivot with a nonzero right-hand side.
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    /// A Pochhammer symbol or leading product required by a transform vanishes.
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    /// Independent routes for the same quantity produced different values.
    #[error("route disagreement: {0}")]
    RouteDisagreement(String),
    /// Caller supplied data violating a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
