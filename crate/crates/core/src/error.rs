use thiserror::Error;

/// Errors produced by the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    /// An alternative or criterion id occurs more than once.
    #[error("duplicate id '{0}'")]
    DuplicateId(String),
    /// Input has no rows or no columns where at least one is required.
    #[error("empty input: {0}")]
    EmptyInput(String),
    /// Dimensions of two collaborating values disagree.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// A value lies outside its documented domain.
    #[error("out of range: {0}")]
    Range(String),
    /// The data admits no meaningful answer (for example a single alternative).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// A cycle was found where an acyclic relation is required.
    #[error("cycle detected: {0}")]
    Cycle(String),
    /// A requested element does not exist.
    #[error("not found: {0}")]
    NotFound(String),
    /// An internal guard failed; this indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
