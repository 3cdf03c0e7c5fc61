//! Error type shared across the engine.
//!
//! Every fallible operation returns [`Error`]; there are no panicking public
//! entry points. `DegreeBoundExceeded` is deliberately its own variant so
//! callers (and the CLI exit-code mapping) can tell "input too large for the
//! exact desk-scale algorithms" apart from "input malformed".

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Syntax error in polynomial or instance-file text. `pos` is a byte
    /// offset into the offending string.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A variable index fell outside the ambient ring.
    #[error("variable x{index} out of range: ring has {ambient} variable(s)")]
    VarOutOfRange { index: usize, ambient: usize },

    /// Two operands live in rings with different variable counts.
    #[error("ambient mismatch: {left} variable(s) vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    /// A list argument had the wrong length (substitution images, tuples, ...).
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// Exact division by the zero polynomial.
    #[error("division by zero polynomial")]
    DivisionByZero,

    /// Precondition violated by the caller (zero input where nonzero is
    /// required, reducible corpus element, coprimality failure, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Input exceeds the configured exact-factorization bounds. The engine
    /// refuses rather than risk a slow or silently wrong answer.
    #[error("degree bound exceeded: {0}")]
    DegreeBoundExceeded(String),

    /// An internal re-verification of a computed witness failed. This should
    /// never fire; if it does, the result it guards was wrong.
    #[error("soundness re-check failed: {0}")]
    Soundness(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl fmt::Display) -> Self {
        Error::InvalidInput(msg.to_string())
    }

    pub(crate) fn parse(pos: usize, msg: impl fmt::Display) -> Self {
        Error::Parse {
            pos,
            msg: msg.to_string(),
        }
    }
}
