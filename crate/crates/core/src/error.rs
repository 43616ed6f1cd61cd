use thiserror::Error;

use crate::sq::IndexLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index `{0}` appears more than once")]
    DuplicateIndex(IndexLabel),

    #[error("unknown index `{0}`")]
    UnknownIndex(IndexLabel),

    #[error("shape mismatch: expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index sets differ")]
    IndexSetMismatch,

    #[error("generator sets differ")]
    GeneratorSetMismatch,

    #[error("element mixes grades {first} and {second} with different exponential multipliers")]
    NonHomogeneous { first: usize, second: usize },

    #[error("element is not in the left ideal (residual {residual:.3e})")]
    NotInIdeal { residual: f64 },

    #[error("too many modes: {found} exceeds the limit of {limit}")]
    TooManyModes { found: usize, limit: usize },

    #[error("dense representation for m = {m} exceeds the cap of {max}")]
    DenseTooLarge { m: usize, max: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
