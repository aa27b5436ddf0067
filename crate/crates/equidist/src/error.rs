use std::fmt;

/// Everything that can go wrong across the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Requested field order has two distinct prime factors (or is < 2).
    NotPrimePower { q: u64 },
    /// Multiplicative inverse of zero.
    DivisionByZero,
    /// Field elements from different field orders were mixed.
    FieldMismatch { left: u32, right: u32 },
    /// A parameter exceeds the configured desk-scale cap.
    CapExceeded { what: &'static str, value: u128, cap: u128 },
    /// Words disagree in alphabet or length.
    ShapeMismatch { reason: String },
    /// Symbol out of range or empty word.
    InvalidWord { reason: String },
    /// Constant-weight operation applied to words of different weights.
    WeightMismatch { left: usize, right: usize },
    /// Not a bijection on the claimed domain.
    InvalidPermutation { reason: String },
    /// Translation anchor is not a codeword.
    WordNotInCode,
    /// Duplicate word in code input.
    DuplicateWord,
    /// Duplicate member set in a family.
    DuplicateSet,
    /// An even distance is required.
    OddDistance { d: usize },
    /// Construction or query parameters out of range.
    InvalidParameters { reason: String },
    /// Operation requires an equidistant code.
    NotEquidistant,
    /// Determinant of a non-square matrix.
    NonSquare { rows: usize, cols: usize },
    /// Point-set size does not match the expected simplex size.
    SizeMismatch { expected: usize, got: usize },
    /// Family is not constant-weight.
    NotConstantWeight,
    /// Pairwise intersection sizes are not all equal.
    NotSingleIntersection,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrimePower { q } => write!(f, "{q} is not a prime power"),
            Error::DivisionByZero => write!(f, "division by zero in finite field"),
            Error::FieldMismatch { left, right } => {
                write!(f, "mixed field orders {left} and {right}")
            }
            Error::CapExceeded { what, value, cap } => {
                write!(f, "{what} = {value} exceeds cap {cap}")
            }
            Error::ShapeMismatch { reason } => write!(f, "shape mismatch: {reason}"),
            Error::InvalidWord { reason } => write!(f, "invalid word: {reason}"),
            Error::WeightMismatch { left, right } => {
                write!(f, "weights differ: {left} vs {right}")
            }
            Error::InvalidPermutation { reason } => write!(f, "invalid permutation: {reason}"),
            Error::WordNotInCode => write!(f, "word is not in the code"),
            Error::DuplicateWord => write!(f, "duplicate word in code"),
            Error::DuplicateSet => write!(f, "duplicate set in family"),
            Error::OddDistance { d } => write!(f, "distance {d} is odd, need even"),
            Error::InvalidParameters { reason } => write!(f, "invalid parameters: {reason}"),
            Error::NotEquidistant => write!(f, "code is not equidistant"),
            Error::NonSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, need square")
            }
            Error::SizeMismatch { expected, got } => {
                write!(f, "expected {expected} points, got {got}")
            }
            Error::NotConstantWeight => write!(f, "words do not all have the same weight"),
            Error::NotSingleIntersection => {
                write!(f, "pairwise intersection sizes are not all equal")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
