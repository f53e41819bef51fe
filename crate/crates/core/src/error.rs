use core::fmt;

/// Errors raised by the algorithms in this crate.
///
/// Positions carried in variants are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The raw input contains the byte reserved for the terminator.
    SentinelCollision {
        position: usize,
    },
    /// A generated or loaded text would exceed the configured budget.
    SizeLimit {
        requested: u128,
        limit: usize,
    },
    InvalidParameter(&'static str),
    OutOfRange {
        index: usize,
        len: usize,
    },
    EmptyInput,
    /// Phrases do not tile `0..n` exactly.
    NotATiling {
        position: usize,
    },
    /// Some position never resolves to an explicit symbol.
    CyclicScheme {
        position: usize,
    },
    /// The greedy parse under the supplied order violated the order
    /// condition, so the order is not extensible.
    NonExtensibleOrder {
        phrase: usize,
    },
    /// A grammar-derived parse does not respect the supplied order.
    OrderViolation {
        phrase: usize,
    },
    LengthMismatch {
        expected: usize,
        actual: usize,
    },
    TruncationOutOfRange {
        rule: usize,
    },
    /// A grammar or collage system is not well formed.
    MalformedRules {
        rule: usize,
        reason: &'static str,
    },
    InvalidParse {
        phrase: usize,
        reason: &'static str,
    },
    /// A substring rule refers to a base that never occurs in the parse tree.
    NotInternal {
        rule: usize,
    },
    BudgetExceeded {
        n: usize,
        max_n: usize,
    },
    Aborted,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SentinelCollision { position } => {
                write!(
                    f,
                    "input contains the reserved sentinel byte 0 at offset {position}"
                )
            }
            Error::SizeLimit { requested, limit } => {
                write!(
                    f,
                    "text of {requested} symbols exceeds the budget of {limit}"
                )
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::OutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            Error::EmptyInput => f.write_str("empty input"),
            Error::NotATiling { position } => {
                write!(f, "phrases do not tile the text at position {position}")
            }
            Error::CyclicScheme { position } => {
                write!(
                    f,
                    "position {position} never resolves to an explicit symbol"
                )
            }
            Error::NonExtensibleOrder { phrase } => {
                write!(
                    f,
                    "greedy phrase {phrase} violates the order; the order is not extensible"
                )
            }
            Error::OrderViolation { phrase } => {
                write!(f, "phrase {phrase} does not respect the supplied order")
            }
            Error::LengthMismatch { expected, actual } => {
                write!(
                    f,
                    "expansion length {actual} differs from the expected {expected}"
                )
            }
            Error::TruncationOutOfRange { rule } => {
                write!(
                    f,
                    "truncation bounds of rule {rule} exceed its base expansion"
                )
            }
            Error::MalformedRules { rule, reason } => write!(f, "rule {rule}: {reason}"),
            Error::InvalidParse { phrase, reason } => write!(f, "phrase {phrase}: {reason}"),
            Error::NotInternal { rule } => {
                write!(
                    f,
                    "rule {rule} truncates a base that does not occur in the parse tree"
                )
            }
            Error::BudgetExceeded { n, max_n } => {
                write!(f, "input length {n} exceeds the search budget of {max_n}")
            }
            Error::Aborted => f.write_str("search aborted by the caller"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
