use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A pairing was applied to a word whose length does not match the
    /// pairing's ground set.
    #[error("word has {word_len} letters but the pairing covers {ground_size} indices")]
    WordPairingMismatch { word_len: usize, ground_size: usize },

    /// An operation required exhaustive enumeration of non-crossing pairings
    /// beyond the configured ceiling.
    #[error(
        "word length {len} exceeds the enumeration ceiling {ceiling}; exhaustive \
         enumeration of NC2({len}) is impractical (raise the ceiling only if you \
         accept Catalan-order runtime, or use a closed-form route)"
    )]
    EnumerationCapacity { len: usize, ceiling: usize },

    /// A position tuple with at least three even positions has no closed form
    /// and the fallback enumeration would exceed the ceiling.
    #[error(
        "tuple has {even_count} even positions (no closed form beyond two) and word \
         length {len} exceeds the enumeration ceiling {ceiling}; closed forms cover \
         tuples with at most two even positions after canonicalization"
    )]
    PositionalCapacity {
        even_count: usize,
        len: usize,
        ceiling: usize,
    },

    /// Invalid position tuple (out of range, not strictly increasing, ...).
    #[error("invalid position tuple: {0}")]
    InvalidPositions(String),

    /// A word string contained a letter other than `x` or `d`.
    #[error("invalid letter {0:?} in word (use 'x' for X and 'd' for X-dagger)")]
    InvalidLetter(char),

    /// An argument fell outside the documented domain of a numeric routine.
    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// Preconditions of a combinatorial routine were violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
