use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground mismatch: expected ground of size {expected}, got {found}")]
    GroundMismatch { expected: usize, found: usize },

    #[error("empty ground set")]
    EmptyGround,

    #[error("restriction to the empty set")]
    EmptyRestriction,

    #[error("size guard: {what} is {size}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("mazur chain level cap {cap} reached before the set entered the chain (value is at least {cap})")]
    LevelCapExceeded { cap: u32 },

    #[error("table has no entry for set {0}")]
    MissingTableEntry(String),

    #[error("point {point} has infinite singleton value")]
    InfiniteSingleton { point: usize },

    #[error("non-integer value {value} on set {set}")]
    NonIntegerValue { set: String, value: String },

    #[error("value {0} is not attained")]
    NotAttained(u64),

    #[error("family does not cover point {point}")]
    CoverageGap { point: usize },

    #[error("not a probability measure: total mass {0}")]
    NotProbability(String),

    #[error("hypothesis failure: {0}")]
    HypothesisFailure(String),

    #[error("set is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("matrix entry ({row},{col}) = {value} exceeds 1")]
    EntryAboveOne {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("signed input: entry ({row},{col}) is negative")]
    SignedInput { row: usize, col: usize },

    #[error("set {0} is not in the Schreier barrier")]
    NotBarrierSet(String),

    #[error("block {block} has size {size}, needs at least {need}")]
    BlockTooSmall { block: usize, size: usize, need: usize },

    #[error("insufficient input: reached {reached} of target {target}")]
    Insufficient { reached: usize, target: usize },

    #[error("wrong representation: expected {expected}")]
    WrongRepresentation { expected: &'static str },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Resource-guard errors map to a distinct CLI exit code.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. } | Error::LevelCapExceeded { .. })
    }
}
