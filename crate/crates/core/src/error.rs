use std::path::PathBuf;

/// Errors produced by geometry construction, spectral analysis, experiments
/// and the configuration/output layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    /// The dense eigensolver failed or produced pairs whose residual exceeds
    /// the accepted bound.
    #[error("eigensolver diagnostic: {message} (residual {residual:.3e})")]
    Solver { message: String, residual: f64 },

    /// A numerical invariant (passivity, block identities) was violated.
    #[error("numerical diagnostic: {0}")]
    Diagnostic(String),

    #[error("at sweep value {value}: {source}")]
    AtGridPoint {
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Solver { .. } | Error::Diagnostic(_) | Error::InvalidState(_) => true,
            Error::AtGridPoint { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
