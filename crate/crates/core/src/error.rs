use thiserror::Error;

/// Errors raised by the combinatorial layer and the finite-field oracle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A Cartan datum, subset, weight vector or field request that the library does not support.
    #[error("configuration error: {0}")]
    Config(String),

    /// Operands that do not belong together (elements of different Weyl groups, wrong matrix size).
    #[error("usage error: {0}")]
    Usage(String),

    /// An enumeration would exceed its configured cap.
    #[error("resource cap exceeded: {what} needs {needed} but the cap is {cap}")]
    Cap {
        what: String,
        needed: u128,
        cap: u128,
    },

    /// An internal consistency check failed. This signals a bug or a wrong reading of the theory
    /// and is never repaired silently.
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
