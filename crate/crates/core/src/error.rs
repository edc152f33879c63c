use alloc::string::String;
use core::fmt;

/// Errors raised by the core crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not a prime.
    NotPrime(u64),
    /// A context parameter is out of range (zero exponent, zero dimension, ...).
    InvalidContext(String),
    /// `p^(k·n)` does not fit in the index range.
    Overflow { p: u64, k: u32, n: usize },
    /// Two objects live in different dimensions or have different lengths.
    DimensionMismatch { expected: usize, found: usize },
    /// A value is out of its admissible range.
    OutOfRange(String),
    /// An element was expected to be a unit of `Z/p^kZ`.
    NotUnit(u64),
    /// A vector with no invertible coordinate was used as a direction.
    DegenerateDirection,
    /// Work estimate exceeds the configured budget.
    BudgetExceeded { what: String, needed: u128, limit: u128 },
    /// A structural invariant of a geometric object was violated.
    Invariant(String),
    /// A hypothesis of a checked statement is not met.
    Hypothesis(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::InvalidContext(msg) => write!(f, "invalid context: {msg}"),
            Error::Overflow { p, k, n } => {
                write!(f, "{p}^({k}*{n}) does not fit in the index range")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::OutOfRange(msg) => write!(f, "out of range: {msg}"),
            Error::NotUnit(a) => write!(f, "{a} is not a unit"),
            Error::DegenerateDirection => write!(f, "vector has no invertible coordinate"),
            Error::BudgetExceeded { what, needed, limit } => {
                write!(f, "budget exceeded for {what}: needs {needed}, limit {limit}")
            }
            Error::Invariant(msg) => write!(f, "invariant violated: {msg}"),
            Error::Hypothesis(msg) => write!(f, "hypothesis not met: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
