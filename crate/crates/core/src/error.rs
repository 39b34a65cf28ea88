use thiserror::Error;

/// Failure classes shared by every module.
///
/// The three variants map onto distinct process exit codes in the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-side precondition was violated.
    #[error("usage error: {0}")]
    Usage(String),
    /// A torsion certificate could not be established.
    #[error("certification failure: {0}")]
    Certification(String),
    /// An internal algebraic invariant failed; this indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
