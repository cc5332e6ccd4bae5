use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LclError {
    #[error("alphabets must be non-empty")]
    EmptyAlphabet,
    #[error("alphabet lists a symbol twice")]
    DuplicateSymbol,
    #[error("input map must cover every input symbol")]
    PartialInputMap,
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("multiset of size {found} listed under degree {degree}")]
    CardinalityViolation { degree: usize, found: usize },
    #[error("unknown builtin problem `{0}`")]
    UnknownName(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("labeling is not total")]
    PartialLabeling,
}
