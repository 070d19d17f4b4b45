use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty word has no subword set")]
    EmptyWord,

    #[error("symbol {symbol} outside alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u8, alphabet: u16 },

    #[error("alphabet size {0} unsupported (need 2..=256)")]
    BadAlphabet(u16),

    #[error("prefix budget exceeded: requested {requested} symbols, budget {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },

    #[error("stage {stage} is beyond construction capacity: {reason}")]
    StageCapacity { stage: u32, reason: String },

    #[error("stage {stage} exceeds the stage cap {cap} (override with --force)")]
    StageCap { stage: u32, cap: u32 },

    #[error("sequence too short: index {index} requested, {len} symbols available")]
    SequenceTooShort { index: u64, len: u64 },

    #[error("modulus must exceed tolerance")]
    ModulusNotAboveTolerance,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cylinder lengths differ: {0} vs {1}")]
    MismatchedLength(usize, usize),

    #[error("point is not periodic with period {period} on the first {checked} symbols")]
    NotPeriodic { period: usize, checked: usize },

    #[error("malformed sequence file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
