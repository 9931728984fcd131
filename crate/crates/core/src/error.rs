use std::fmt;

/// Library error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Ring description is invalid (non-prime p, reducible modulus, order too large, ...).
    InvalidRing(String),
    /// Syntax error in a ring spec or polynomial expression, with byte offset.
    Parse { pos: usize, msg: String },
    /// Inversion requested for a non-unit element.
    NotAUnit,
    /// Division by a polynomial whose leading coefficient is not a unit.
    NonUnitLeadingCoefficient,
    /// An exhaustive operation would exceed its configured cap.
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u64,
    },
    /// The requested quantity is undefined for the zero code.
    ZeroCode,
    /// Parameters outside the admissible ranges of the code family.
    InvalidParams(String),
    /// The requested method does not apply to this code or ring.
    NotApplicable(String),
    /// Mixed rings or malformed input where a specific ring was required.
    RingMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRing(m) => write!(f, "invalid ring: {m}"),
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::NotAUnit => write!(f, "element is not a unit"),
            Error::NonUnitLeadingCoefficient => {
                write!(f, "divisor leading coefficient is not a unit")
            }
            Error::CapExceeded { what, needed, cap } => {
                write!(f, "{what} needs {needed} items, above the cap {cap}")
            }
            Error::ZeroCode => write!(f, "undefined for the zero code"),
            Error::InvalidParams(m) => write!(f, "invalid parameters: {m}"),
            Error::NotApplicable(m) => write!(f, "not applicable: {m}"),
            Error::RingMismatch(m) => write!(f, "ring mismatch: {m}"),
        }
    }
}

impl std::error::Error for Error {}
