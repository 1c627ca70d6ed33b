use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition on the inputs was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The request exceeds an enumeration or size bound.
    #[error("resource bound exceeded: {0}")]
    Resource(String),

    /// A numerical method could not certify the requested accuracy.
    #[error("accuracy not reached: {message} (achieved {achieved:e})")]
    Accuracy { message: String, achieved: f64 },

    /// A linear system was too ill-conditioned to trust.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// An ODE integration left its stable regime.
    #[error("instability: {0}")]
    Instability(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn resource<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}
