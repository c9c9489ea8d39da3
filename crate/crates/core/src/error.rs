use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("cannot parse permutation {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("not a permutation of 1..{n}: {entries:?}")]
    NotAPermutation { n: usize, entries: Vec<usize> },

    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::perm::MAX_DEGREE)]
    DegreeTooLarge(usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("{v} is not below {w} in Bruhat order")]
    NotBelow { v: Permutation, w: Permutation },

    #[error("{0}")]
    Precondition(String),

    #[error("digraph has a directed cycle")]
    Cyclic,

    #[error("chain is not saturated at step {step}")]
    NotSaturated { step: usize },

    #[error("indices repeat: {0}")]
    RepeatedIndex(usize),

    #[error("case template mismatch: {0}")]
    TemplateMismatch(String),

    /// A combinatorial verdict disagreed with its geometric counterpart.
    #[error("cross-check failed for [{v}, {w}]: {detail}")]
    CrossCheck {
        v: Permutation,
        w: Permutation,
        detail: String,
    },

    #[error("scan refused: {0}")]
    ScanGuard(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
