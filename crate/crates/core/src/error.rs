use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("word length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("the all-identity word is not an element of su(2^n)")]
    IdentityWord,

    #[error("invalid Pauli word {0:?}")]
    InvalidWord(String),

    #[error("particle count must be between 1 and {max}, got {got}")]
    ParticleCount { got: usize, max: usize },

    #[error("generator set is empty or zero")]
    EmptyGenerators,

    #[error("closure dimension exceeded the cap of {cap}")]
    CapExceeded { cap: usize },

    #[error("particle {particle} couples to itself")]
    SelfCoupling { particle: usize },

    #[error("pair {{{k}, {l}}} is coupled more than once")]
    DuplicatePair { k: usize, l: usize },

    #[error("particle index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("expected {expected} gyromagnetic ratios, got {got}")]
    GammaCount { expected: usize, got: usize },

    #[error("no control axes are active")]
    NoControlAxes,

    #[error("block {block} out of range (network has {blocks} gamma blocks)")]
    BlockOutOfRange { block: usize, blocks: usize },

    #[error("dense materialization refused: {n} sites exceeds the cap of {cap}")]
    DenseCap { n: usize, cap: usize },

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid rational {0:?}")]
    BadRational(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown case selector {0:?}")]
    UnknownCase(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed user input rather than by the
    /// analysis itself.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::SelfCoupling { .. }
                | Error::DuplicatePair { .. }
                | Error::IndexOutOfRange { .. }
                | Error::GammaCount { .. }
                | Error::NoControlAxes
                | Error::BadRational(_)
                | Error::Config(_)
                | Error::UnknownCase(_)
                | Error::Json(_)
                | Error::Io(_)
                | Error::ParticleCount { .. }
                | Error::InvalidWord(_)
        )
    }
}
