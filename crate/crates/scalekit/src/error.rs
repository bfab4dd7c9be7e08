//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by group construction, evaluation and probes.
#[derive(Debug, Error)]
pub enum SkError {
    /// A group specification string could not be parsed.
    #[error("invalid group spec `{0}`")]
    BadGroupSpec(String),

    /// An element literal could not be parsed for the given group.
    #[error("invalid element `{literal}` for group {group}: {reason}")]
    BadElement {
        literal: String,
        group: String,
        reason: String,
    },

    /// An element belongs to a different group kind than expected.
    #[error("element of wrong kind for group {0}")]
    WrongKind(String),

    /// The requested operation needs a finitely generated discrete group.
    #[error("operation not supported for group {group}: {reason}")]
    Unsupported { group: String, reason: String },

    /// A scale specification string could not be parsed.
    #[error("invalid scale spec `{0}`")]
    BadScaleSpec(String),

    /// A scale was evaluated outside its domain (e.g. a word gauge on an
    /// element outside the enumerated ball).
    #[error("scale `{scale}` undefined at {element}")]
    OutOfDomain { scale: String, element: String },

    /// A probe was asked for with parameters it cannot honour.
    #[error("invalid probe parameters: {0}")]
    BadProbeParams(String),

    /// Generic I/O failure (table-backed scales, CLI config).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias.
pub type SkResult<T> = Result<T, SkError>;
