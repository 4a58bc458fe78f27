//! The crate-wide error type.

use crate::field::FieldSpec;
use crate::seq::Dim;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Two values from different fields were combined.
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    /// Vector/matrix dimensions do not line up.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: Dim, found: Dim },

    #[error("division by zero")]
    DivisionByZero,

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: Dim },

    /// `restrict` asked for more coordinates than the stage has.
    #[error("cannot restrict a vector of length {len} to length {want}")]
    BadTruncation { len: usize, want: usize },

    /// A thread's stages fail the compatibility condition.
    #[error("incompatible thread: {0}")]
    IncompatibleThread(String),

    /// The composite of two rule matrices has no finite description among the
    /// available matrix bodies.
    #[error("composite is not representable by the available matrix bodies")]
    UnrepresentableComposite,

    /// Matrix equality could not be certified within the stated bound.
    ///
    /// Not produced by any of the shipped matrix bodies (their equality is
    /// fully decidable); kept so callers can rely on the contract that
    /// equality is never silently approximated.
    #[error("matrix equality undecidable within bound {bound}")]
    Undecidable { bound: usize },

    /// A truncation does not cover every row support, which would make the
    /// rank/exactness answer unsound.
    #[error("truncation {trunc} too small: row supports extend to {required}")]
    TruncationTooSmall { trunc: usize, required: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A value failed a construction invariant (non-prime modulus, repeating
    /// tail on a finite dimension, duplicate explicit row, ...).
    #[error("invalid construction: {0}")]
    Invalid(String),

    /// Syntactic error in a vector/matrix file.
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// Well-formed line that violates a file-format invariant
    /// (stored zero, duplicate coordinate, unsorted triplets).
    #[error("line {line}: invariant violation: {reason}")]
    FileInvariant { line: usize, reason: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
