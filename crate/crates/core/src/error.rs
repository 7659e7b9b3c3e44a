use thiserror::Error;

use crate::word::Word;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {0} is outside the supported alphabet")]
    BadLetter(i32),
    #[error("word length {0} is outside 1..=8")]
    BadLength(usize),
    #[error("words have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("word {0} contains a star")]
    StarInWord(Word),
    #[error("coordinate {coord} is out of range for dimension {dim}")]
    CoordinateOutOfRange { coord: usize, dim: usize },
    #[error("duplicate word {0}")]
    DuplicateWord(Word),
    #[error("empty code")]
    EmptyCode,
    #[error("code is not a polybox code: {0} and {1} are not dichotomous")]
    NotPolybox(Word, Word),
    #[error("code contains a star word {0} where a star-free code is required")]
    NotStarFree(Word),
    #[error("letter {letter} at {word} needs {needed} complementary pairs, code has {pairs}")]
    PairBudget {
        word: Word,
        letter: i8,
        needed: u8,
        pairs: u8,
    },
    #[error("box of {word} does not meet the box of {target}")]
    EmptyIntersection { word: Word, target: Word },
    #[error("{0} is not covered by the code")]
    NotCovered(Word),
    #[error("contradiction: {0}")]
    Contradiction(String),
    #[error("statement violated: {0}")]
    StatementViolation(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("inadmissible configuration: case {case} at dimension {dim}")]
    Inadmissible { case: u8, dim: usize },
    #[error("letters {0} and {1} must be distinct and non-complementary")]
    BadLetterPair(i8, i8),
    #[error("code of size {0}, expected 12")]
    WrongSize(usize),
    #[error("line {line}, column {column}: {message} (`{token}`)")]
    Parse {
        line: usize,
        column: usize,
        token: String,
        message: String,
    },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}
