use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("operands live over different coefficient rings ({0} vs {1})")]
    RingMismatch(String, String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("boundary maps do not compose to zero at degree {degree}")]
    MalformedComplex { degree: i64 },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
