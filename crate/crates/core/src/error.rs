//! Error type shared across the crate.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by codec, machine, and search operations.
///
/// Variants are grouped so callers can map them onto coarse classes:
/// parameter misuse, malformed data, and exceeded search/enumeration limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two sequences that must have equal length do not.
    LengthMismatch { left: usize, right: usize },
    /// A sequence alphabet does not match the expected size.
    AlphabetMismatch { expected: u16, found: u16 },
    /// A symbol index is outside its alphabet.
    SymbolOutOfRange { symbol: u16, alphabet: u16 },
    /// A block or sub-block length does not divide the enclosing length.
    DivisibilityViolation { divisor: usize, len: usize },
    /// A bad parameter value (zero denominator, empty alphabet, ...).
    InvalidParameter(String),
    /// Ball or product-space enumeration exceeded the configured ceiling.
    EnumerationLimit { limit: u64 },
    /// A machine construction would need more states than allowed.
    StateBudgetExceeded { states: u64, limit: u64 },
    /// A bounded search ran out of nodes before reaching a verdict.
    SearchBudgetExceeded { explored: u64, budget: u64 },
    /// A machine table is malformed (partial, inconsistent, invalid indices)
    /// or violated a run-time invariant such as block length conservation.
    InvalidMachine(String),
    /// Information losslessness could not be decided within the bound, so a
    /// check that requires it refuses to run.
    IlUndecided { max_len: usize },
    /// Malformed file or bitstream contents.
    Format(String),
    /// I/O failure, flattened to a message so the error stays comparable.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::AlphabetMismatch { expected, found } => {
                write!(f, "alphabet mismatch: expected size {expected}, found {found}")
            }
            Error::SymbolOutOfRange { symbol, alphabet } => {
                write!(f, "symbol {symbol} out of range for alphabet of size {alphabet}")
            }
            Error::DivisibilityViolation { divisor, len } => {
                write!(f, "{divisor} does not divide length {len}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::EnumerationLimit { limit } => {
                write!(f, "enumeration limit of {limit} nodes exceeded; reduce k or D")
            }
            Error::StateBudgetExceeded { states, limit } => {
                write!(f, "construction needs {states} states, limit is {limit}")
            }
            Error::SearchBudgetExceeded { explored, budget } => {
                write!(f, "search budget exceeded: {explored} nodes, budget {budget}")
            }
            Error::InvalidMachine(msg) => write!(f, "invalid machine: {msg}"),
            Error::IlUndecided { max_len } => {
                write!(f, "information losslessness undecided up to input length {max_len}")
            }
            Error::Format(msg) => write!(f, "format error: {msg}"),
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
