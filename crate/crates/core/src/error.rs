//! Crate-wide error type.
//!
//! The variants are grouped by how a caller should react: construction and
//! argument problems (`Usage`-like), math domain violations, data that fails
//! structural validation (`Integrity`), text that fails to parse (`Parse`),
//! and refusals to start an attack whose candidate space is too large
//! (`GuardExceeded`). The CLI maps each group to a distinct exit code.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// Field degree outside the supported range.
    #[error("field degree {0} unsupported (supported: {min}..={max})", min = crate::field::MIN_DEGREE, max = crate::field::MAX_DEGREE)]
    UnsupportedDegree(u32),

    /// Modulus polynomial does not have the exact degree claimed.
    #[error("modulus 0x{modulus:x} does not have degree {degree}")]
    ModulusDegree { modulus: u64, degree: u32 },

    /// Modulus polynomial factors over GF(2).
    #[error("modulus 0x{modulus:x} is reducible over GF(2)")]
    ReducibleModulus { modulus: u64 },

    /// Element bits outside [0, 2^n).
    #[error("value 0x{bits:x} out of range for GF(2^{degree})")]
    ElementRange { bits: u64, degree: u32 },

    /// Inversion of the zero field element.
    #[error("zero has no inverse")]
    ZeroInverse,

    /// Bad structural argument (wrong length, wrong coordinate, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Index outside the space it addresses.
    #[error("index {index} out of range for {what} of size {size}")]
    IndexRange {
        index: u64,
        what: &'static str,
        size: u64,
    },

    /// A field value has no representation under a logarithmic signature,
    /// or decryption hit an inconsistent intermediate state.
    #[error("integrity failure: {0}")]
    Integrity(String),

    /// Text input rejected; `line` is 1-based (0 when no line applies).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Attack refused because the candidate space exceeds the desk-scale guard.
    #[error("guard refused: {0}")]
    GuardExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
