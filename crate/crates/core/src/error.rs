use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input is not symmetric: swapping {0} and {1} changes it")]
    NonSymmetricInput(String, String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("right operand has nonzero co-zero {0}; composition needs an augmented argument")]
    NotReduced(BigInt),

    #[error("operand has nonzero co-zero {0}; looping is only defined on the augmentation ideal")]
    NotAugmented(BigInt),

    #[error("value {value} falls outside the window [-{window}, {window}]")]
    WindowExhausted { window: u32, value: BigInt },

    #[error("left operand is not in indicator normal form")]
    NotNormalised,

    #[error("model {model} cannot supply lambda^{needed} (supports up to {max})")]
    ModelTruncationExceeded {
        model: String,
        needed: u32,
        max: u32,
    },

    #[error("generator index {needed} exceeds truncation level {trunc}")]
    TruncationExceeded { needed: u32, trunc: u32 },

    #[error("truncation levels differ: {0} vs {1}")]
    TruncationMismatch(u32, u32),

    #[error("windows differ: {0} vs {1}")]
    WindowMismatch(u32, u32),

    #[error("invalid COI family: {0}")]
    InvalidFamily(String),

    #[error("cannot restrict below rank 1")]
    RankUnderflow,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("model {model} violates {axiom}")]
    RegistrationFailure { model: String, axiom: String },

    #[error("unknown model `{0}`")]
    UnknownModel(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
