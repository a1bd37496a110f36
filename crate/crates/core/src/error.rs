use thiserror::Error;

use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("letter id {0} does not belong to the alphabet")]
    ForeignLetter(usize),

    #[error("alphabet has no neutral letter")]
    NoNeutral,

    #[error("position {position} is out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("cannot pad a word of length {len} to length {target}")]
    PadTooShort { len: usize, target: usize },

    #[error("map is not idempotent")]
    NotIdempotent,

    #[error("minimal class is infinite")]
    InfiniteClass,

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("normalisation did not finish ({reason}); reached {reached:?}")]
    NonNormalising { reached: Word, reason: String },

    #[error("invalid rewriting rule: {0}")]
    InvalidRule(String),

    #[error("plain rules need a neutral-free table, but {0} produces the neutral letter")]
    NeutralOutput(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
