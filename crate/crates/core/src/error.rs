use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on shapes or structural invariants was violated.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A parameter lies outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),
    /// The Jacobi eigensolver hit its sweep cap.
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
