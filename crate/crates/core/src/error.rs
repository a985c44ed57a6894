use thiserror::Error;

/// Errors raised by the word, square, and enumeration operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,

    #[error("invalid letter {letter:?} at position {position}; words are over {{0, 1}}")]
    InvalidLetter { letter: char, position: usize },

    #[error("base word must be nonempty and contain both letters")]
    DegenerateBase,

    #[error("word of length {0} is too short; at least 2 letters are required")]
    TooShort(usize),

    #[error("invalid parameters a = {a}, b = {b}; a must be at least 1")]
    InvalidParams { a: u32, b: u32 },

    #[error("no minimal square is a prefix of the remainder at position {0}")]
    NoSquareMatches(usize),

    #[error("word is not a product of minimal squares inside the language")]
    NotInPi,

    #[error("nothing left after trimming to the last complete minimal square")]
    EmptyAfterTrim,

    #[error("directive sequence is empty")]
    EmptyDirective,

    #[error("directive terms must be positive")]
    InvalidDirective,

    #[error("slope {c}/{d} is not a reduced fraction with 1 <= c < d")]
    InvalidSlope { c: u64, d: u64 },

    #[error("word is not a standard word")]
    NotStandard,

    #[error("invalid letter {0:?} in a word over {{S, L}}")]
    InvalidPatternLetter(char),

    #[error("word over {{S, L}} is not constant on the doubling-map orbits")]
    NotPatternWord,

    #[error("block {block} matches neither S nor L(S)")]
    NotDecomposable { block: usize },

    #[error("classification contradiction: {0}")]
    ClassificationContradiction(String),

    #[error("{0} is even; the multiplicative order of 2 is undefined")]
    NotCoprime(u64),

    #[error("{d} is not a divisor of {n} greater than 2")]
    NotADivisor { n: u64, d: u64 },

    #[error("count for n = {0} does not fit in 128 bits")]
    Overflow(u64),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
