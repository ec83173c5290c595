use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is undefined on the empty string")]
    EmptyString,

    #[error("string length {0} exceeds the supported maximum of 64")]
    TooLong(usize),

    #[error("invalid character {0:?} in binary string")]
    InvalidBit(char),

    #[error("shift {shift} is out of range for strings of length {n}")]
    ShiftOutOfRange { shift: usize, n: usize },

    #[error("no asymmetric Lucas string exists for n < 9")]
    NoAsymmetricString { n: usize },

    #[error("no vertex orbit of size {k} exists in the Lucas cube of dimension {n}")]
    UnattainableOrbitSize { n: usize, k: usize },

    #[error("{what} requires n >= {min}, got {n}")]
    BelowMinimum { what: &'static str, min: i64, n: i64 },

    #[error("{what} supports n <= {max}, got {n}")]
    AboveMaximum { what: &'static str, max: usize, n: usize },

    #[error("string {0} is not a Fibonacci string")]
    NotFibonacci(String),

    #[error("{0} is not an edge of the Lucas cube")]
    NotAnEdge(String),

    #[error("{0}")]
    Unsupported(&'static str),

    #[error("malformed tiling: {0}")]
    MalformedTiling(String),
}

impl Error {
    pub(crate) fn below(what: &'static str, min: i64, n: i64) -> Self {
        Error::BelowMinimum { what, min, n }
    }

    pub(crate) fn above(what: &'static str, max: usize, n: usize) -> Self {
        Error::AboveMaximum { what, max, n }
    }
}
