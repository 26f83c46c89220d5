use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A finite digit source was asked for a digit it does not carry.
    #[error("insufficient precision: digit e_{requested} requested, digits known up to e_{available}")]
    InsufficientPrecision { requested: usize, available: usize },

    #[error("domain error: {0}")]
    Domain(String),

    /// The stored value sequence does not reach far enough to locate `n`.
    #[error("value sequence too short: n = {n} is not below r_{max_index} = {last}")]
    SequenceTooShort {
        n: String,
        max_index: usize,
        last: String,
    },

    #[error("semigroup generated by {0:?} has no conductor (gcd > 1)")]
    NoConductor(Vec<u64>),

    #[error("dimension model does not stabilize at {target} within the window")]
    NotStabilized { target: String },

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
