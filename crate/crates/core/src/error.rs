use thiserror::Error;

/// Errors raised by the simulation, quadrature and experiment layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Arguments are individually valid but inconsistent with each other.
    #[error("argument error: {0}")]
    Argument(String),

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    Numeric(String),

    /// A simulated path produced a non-finite value.
    #[error("non-finite value on path {path_index} at resolution n={n}")]
    NonFinite { path_index: u64, n: usize },

    /// Configuration rejected, `field` is the dotted path to the offending entry.
    #[error("invalid config at `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
