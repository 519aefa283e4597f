use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An algorithm name did not match any of the twelve supported identifiers.
    #[error("unknown hash algorithm '{0}'")]
    UnknownAlgorithm(String),

    /// An argument violated an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two digests of different lengths were combined.
    #[error("digest length mismatch: {left} bits vs {right} bits")]
    LengthMismatch { left: usize, right: usize },

    /// A proof-of-work search hit its iteration bound without finding a
    /// qualifying digest.
    #[error("proof-of-work search exhausted after {iterations} iterations")]
    PowExhausted { iterations: u64 },

    /// One trial of a proof-of-work distribution run exhausted its bound.
    #[error("proof-of-work trial {trial_index} exhausted after {iterations} iterations")]
    TrialExhausted { trial_index: u64, iterations: u64 },

    /// A serialized chain file could not be parsed.
    #[error("malformed chain file: {0}")]
    MalformedChainFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
