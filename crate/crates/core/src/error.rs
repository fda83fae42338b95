use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not a subspace: {0}")]
    NotContained(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("sign constraints unsatisfiable at vertex {0}")]
    SignConstraints(String),

    #[error("invalid word: {0}")]
    Word(String),

    #[error("words are not comparable: {0}")]
    Incomparable(String),

    #[error("composition undefined: {0}")]
    Composition(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("not a module morphism: {0}")]
    NotMorphism(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
