use thiserror::Error;

use crate::word::Letter;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet of size {sigma}")]
    LetterOutOfRange { letter: u64, sigma: usize },

    #[error("image of letter {0} is empty (morphisms must be nonerasing)")]
    EmptyImage(Letter),

    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,

    #[error("cannot parse morphism: {0}")]
    Parse(String),

    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("expected vectors of dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("argument must be non-zero")]
    Zero,

    #[error("modulus must be at least {min}, got {got}")]
    BadModulus { min: u64, got: u64 },

    #[error("matrix is not invertible modulo {modulus}: gcd(det, {modulus}) = {gcd}")]
    NotInvertibleMod { modulus: u64, gcd: u64 },

    #[error("morphism is not prolongable on letter {0}")]
    NotProlongable(Letter),

    #[error("target occurs {found} time(s) within the horizon, at least {needed} needed")]
    TooFewOccurrences { found: usize, needed: usize },

    #[error("fixed point is not recurrent: the first letter never occurs again")]
    NotRecurrent,

    #[error("return words to 0 did not stabilize after {steps} expansions ({horizon} symbols); the return set may be infinite")]
    ReturnsUnbounded { steps: usize, horizon: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal error: {0}")]
    Internal(String),
}
