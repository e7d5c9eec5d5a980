use thiserror::Error;

use crate::word::{Symbol, Word};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(Symbol),

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(Symbol),

    #[error("forbidden words must be non-empty")]
    EmptyForbiddenWord,

    #[error("word `{0}` is not in the language of the shift")]
    NotInLanguage(Word),

    #[error("block map has no entry for window `{0}`")]
    MissingWindow(Word),

    #[error("word of length {len} is shorter than the block window {window}")]
    WordTooShort { len: usize, window: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix entry at [{row}][{col}] is negative")]
    NegativeEntry { row: usize, col: usize },

    #[error("matrix entry at [{row}][{col}] is zero, expected a positive entry")]
    ZeroEntry { row: usize, col: usize },

    #[error("flow equivalence undecided: input {which} {reason}")]
    Undecided { which: &'static str, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("power iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("presentation does not define a shift of finite type with step at most {max_step}")]
    NotFiniteType { max_step: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
