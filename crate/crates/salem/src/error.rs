//! Crate-wide error type.

use std::fmt;

/// Errors raised by exact-arithmetic operations and classifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Polynomial division by the zero polynomial.
    DivisionByZero,
    /// Inversion (or splitting) of a series that is zero to its precision.
    ZeroSeries,
    /// An operation would return a series with an empty retained window.
    PrecisionExhausted,
    /// Truncation is too coarse to certify the requested quantity.
    PrecisionInsufficient(String),
    /// A facet with non-integer slope has no edge polynomial over F_q.
    NonIntegerSlope,
    /// The constant coefficient in Y is zero where a root at 0 is excluded.
    ZeroConstantTerm,
    /// The Y-degree is too small for the requested classifier.
    DegreeTooSmall { required: usize, actual: usize },
    /// q = 2^r is outside the hypotheses of the membership test.
    EvenCharacteristic,
    /// A precondition of the polynomial-part recurrence does not hold.
    HypothesisViolation(String),
    /// The recurrence and the expansion oracle disagree.
    Inconsistency(String),
    /// Newton-Puiseux deflation exceeded its depth limit.
    RamificationDepthExceeded,
    /// The requested expansion needs coefficients outside F_q.
    ExtensionRequired,
    /// A resource guard (search cap, oracle bound) was exceeded.
    ResourceBound(String),
    /// Invalid field description (p not prime, reducible modulus, ...).
    InvalidField(String),
    /// Expression syntax error, with byte position.
    Parse { pos: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero polynomial"),
            Error::ZeroSeries => write!(f, "series is zero to precision"),
            Error::PrecisionExhausted => write!(f, "precision exhausted: empty retained window"),
            Error::PrecisionInsufficient(what) => {
                write!(f, "precision insufficient to certify {what}")
            }
            Error::NonIntegerSlope => {
                write!(f, "facet slope is not an integer: roots lie outside F_q((1/X))")
            }
            Error::ZeroConstantTerm => write!(f, "constant coefficient in Y is zero"),
            Error::DegreeTooSmall { required, actual } => {
                write!(f, "Y-degree {actual} is below the required {required}")
            }
            Error::EvenCharacteristic => {
                write!(f, "field has characteristic 2: outside test hypotheses")
            }
            Error::HypothesisViolation(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::Inconsistency(msg) => write!(f, "internal cross-check failed: {msg}"),
            Error::RamificationDepthExceeded => {
                write!(f, "deflation depth limit exceeded (ramification suspected)")
            }
            Error::ExtensionRequired => {
                write!(f, "root requires coefficients in an extension of F_q")
            }
            Error::ResourceBound(msg) => write!(f, "resource bound exceeded: {msg}"),
            Error::InvalidField(msg) => write!(f, "invalid field: {msg}"),
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
